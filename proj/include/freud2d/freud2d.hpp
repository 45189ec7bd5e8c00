#pragma once

#include "errors.hpp"
#include "linalg.hpp"
#include "weight.hpp"
#include "structural.hpp"
#include "quadrature.hpp"
#include "moments.hpp"
#include "polynomial.hpp"
#include "orthosys.hpp"
#include "identities.hpp"
#include "oned.hpp"
#include "bridge.hpp"
#include "lattice.hpp"

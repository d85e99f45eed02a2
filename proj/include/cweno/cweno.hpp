#pragma once

#include "cweno/errors.hpp"
#include "cweno/grid.hpp"
#include "cweno/harness.hpp"
#include "cweno/limiter.hpp"
#include "cweno/model.hpp"
#include "cweno/polynomial.hpp"
#include "cweno/quadrature.hpp"
#include "cweno/reconstruction.hpp"
#include "cweno/spatial.hpp"
#include "cweno/timestep.hpp"

#pragma once

#include "circgeo/curvature.hpp"
#include "circgeo/errors.hpp"
#include "circgeo/expr.hpp"
#include "circgeo/jet.hpp"
#include "circgeo/metric.hpp"
#include "circgeo/nabla_q.hpp"
#include "circgeo/qstructure.hpp"
#include "circgeo/types.hpp"

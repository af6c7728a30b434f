#pragma once

#include "bgncg/scalar.hpp"
#include "bgncg/model.hpp"
#include "bgncg/metric.hpp"
#include "bgncg/distances.hpp"
#include "bgncg/cost.hpp"
#include "bgncg/move.hpp"
#include "bgncg/stability.hpp"
#include "bgncg/guided.hpp"
#include "bgncg/optimum.hpp"
#include "bgncg/constructions.hpp"
#include "bgncg/dynamics.hpp"
#include "bgncg/io.hpp"
#include "bgncg/harness.hpp"

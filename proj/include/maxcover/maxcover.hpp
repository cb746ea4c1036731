#pragma once

#include "maxcover/analysis.hpp"
#include "maxcover/engine.hpp"
#include "maxcover/hexlattice.hpp"
#include "maxcover/planner.hpp"
#include "maxcover/protocol.hpp"
#include "maxcover/svg.hpp"

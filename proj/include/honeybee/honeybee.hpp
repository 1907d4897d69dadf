#pragma once

#include "honeybee/cocomp.hpp"
#include "honeybee/duel.hpp"
#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/hexboard.hpp"
#include "honeybee/instance_io.hpp"
#include "honeybee/minimax.hpp"
#include "honeybee/outerplanar.hpp"
#include "honeybee/partial_order.hpp"
#include "honeybee/reductions.hpp"
#include "honeybee/solitaire.hpp"
#include "honeybee/strategy.hpp"

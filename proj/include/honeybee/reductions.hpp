#pragma once

#include "honeybee/reductions/common.hpp"
#include "honeybee/reductions/fvs.hpp"
#include "honeybee/reductions/mscs.hpp"
#include "honeybee/reductions/oracles.hpp"
#include "honeybee/reductions/qbf.hpp"
#include "honeybee/reductions/scs_sp.hpp"

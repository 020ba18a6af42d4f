#pragma once

// Core model-checking surface. The ttt, bench, random_structure and
// service headers are opt-in.

#include "atl/engine.hpp"
#include "atl/errors.hpp"
#include "atl/formula.hpp"
#include "atl/game_structure.hpp"
#include "atl/model_io.hpp"
#include "atl/parser.hpp"
#include "atl/pre.hpp"
#include "atl/state_set.hpp"
#include "atl/version.hpp"

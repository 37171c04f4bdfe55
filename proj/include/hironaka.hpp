#pragma once

#include "hironaka/errors.hpp"
#include "hironaka/evaluation.hpp"
#include "hironaka/game.hpp"
#include "hironaka/io.hpp"
#include "hironaka/lattice.hpp"
#include "hironaka/mcts.hpp"
#include "hironaka/policies.hpp"
#include "hironaka/policy.hpp"
#include "hironaka/registry.hpp"
#include "hironaka/scalar.hpp"
#include "hironaka/search.hpp"
#include "hironaka/simplex.hpp"
#include "hironaka/wire.hpp"

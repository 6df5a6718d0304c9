#pragma once

#include "conepos/errors.hpp"
#include "conepos/exact_arith.hpp"
#include "conepos/cone.hpp"
#include "conepos/hilbert.hpp"
#include "conepos/poset_moves.hpp"
#include "conepos/chain_builder.hpp"
#include "conepos/experiments.hpp"

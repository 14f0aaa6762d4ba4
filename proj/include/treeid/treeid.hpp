#pragma once

// Generic identifiability of direct effects in tree-shaped linear structural
// causal models: closed-form identification over the observable covariances,
// decided by exact-arithmetic randomized polynomial identity testing.

#include "treeid/cycleq.hpp"
#include "treeid/engine.hpp"
#include "treeid/eval.hpp"
#include "treeid/expr.hpp"
#include "treeid/graph.hpp"
#include "treeid/io.hpp"
#include "treeid/model.hpp"
#include "treeid/pit.hpp"
#include "treeid/quadext.hpp"
#include "treeid/rational.hpp"
#include "treeid/rng.hpp"

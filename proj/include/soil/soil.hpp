#pragma once

// SOIL: sparsity oriented importance learning. Candidate models harvested
// from penalized solution paths (or all subsets), weighted by ARM, BIC-p or
// generalized fiducial schemes; per-variable importance is the accumulated
// weight of the models containing the variable.

#include "soil/candidates.hpp"
#include "soil/errors.hpp"
#include "soil/fit.hpp"
#include "soil/importance.hpp"
#include "soil/io.hpp"
#include "soil/parallel.hpp"
#include "soil/path.hpp"
#include "soil/penalty.hpp"
#include "soil/rng.hpp"
#include "soil/scenarios.hpp"
#include "soil/study.hpp"
#include "soil/types.hpp"
#include "soil/weighting.hpp"

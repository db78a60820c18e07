#pragma once

// Umbrella header: the whole library.

#include "graphembed/bench.hpp"
#include "graphembed/csr_graph.hpp"
#include "graphembed/dense.hpp"
#include "graphembed/embedding.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/eval_report.hpp"
#include "graphembed/gradient_models.hpp"
#include "graphembed/katz.hpp"
#include "graphembed/kmeans.hpp"
#include "graphembed/labels.hpp"
#include "graphembed/linkpred.hpp"
#include "graphembed/logistic.hpp"
#include "graphembed/metrics.hpp"
#include "graphembed/reconstruction.hpp"
#include "graphembed/rng.hpp"
#include "graphembed/sbm.hpp"
#include "graphembed/skipgram.hpp"
#include "graphembed/split.hpp"
#include "graphembed/svd.hpp"
#include "graphembed/svg.hpp"
#include "graphembed/train.hpp"
#include "graphembed/walks.hpp"

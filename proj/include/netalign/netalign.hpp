#pragma once

#include "netalign/error.hpp"
#include "netalign/rng.hpp"
#include "netalign/graph.hpp"
#include "netalign/io.hpp"
#include "netalign/synth.hpp"
#include "netalign/centrality.hpp"
#include "netalign/cnfa.hpp"
#include "netalign/gnn.hpp"
#include "netalign/align.hpp"
#include "netalign/metrics.hpp"
#include "netalign/experiment.hpp"

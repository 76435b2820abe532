#ifndef STABLECUT_STABLECUT_HPP
#define STABLECUT_STABLECUT_HPP

#include "stablecut/bench.hpp"
#include "stablecut/combinatorial.hpp"
#include "stablecut/dual_sdp.hpp"
#include "stablecut/errors.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/graph.hpp"
#include "stablecut/graph_io.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/random.hpp"
#include "stablecut/spectral.hpp"

#endif  // STABLECUT_STABLECUT_HPP

#pragma once

#include "graphcurv/curvature.hpp"
#include "graphcurv/edge_list.hpp"
#include "graphcurv/errors.hpp"
#include "graphcurv/generators.hpp"
#include "graphcurv/graph.hpp"
#include "graphcurv/metrics.hpp"
#include "graphcurv/parallel.hpp"
#include "graphcurv/report.hpp"
#include "graphcurv/rewiring.hpp"
#include "graphcurv/rng.hpp"
#include "graphcurv/sensitivity.hpp"
#include "graphcurv/serialize.hpp"
#include "graphcurv/spectral.hpp"
#include "graphcurv/transport.hpp"

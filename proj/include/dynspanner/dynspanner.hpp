#pragma once

#include "dynspanner/apsp_oracle.hpp"
#include "dynspanner/baseline.hpp"
#include "dynspanner/error.hpp"
#include "dynspanner/graph.hpp"
#include "dynspanner/harness.hpp"
#include "dynspanner/metrics.hpp"
#include "dynspanner/spanner_engine.hpp"
#include "dynspanner/trace.hpp"
#include "dynspanner/verifier.hpp"

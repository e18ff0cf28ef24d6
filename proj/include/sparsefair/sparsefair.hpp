#pragma once

// Umbrella header: everything except the CLI front end.

#include "sparsefair/csv.hpp"
#include "sparsefair/data.hpp"
#include "sparsefair/error.hpp"
#include "sparsefair/groups.hpp"
#include "sparsefair/metrics.hpp"
#include "sparsefair/report_json.hpp"
#include "sparsefair/rng.hpp"
#include "sparsefair/sparsity.hpp"
#include "sparsefair/synthetic.hpp"
#include "sparsefair/verify.hpp"

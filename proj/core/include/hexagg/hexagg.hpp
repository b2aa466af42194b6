#pragma once

#include "hexagg/bench.hpp"
#include "hexagg/bucket_index.hpp"
#include "hexagg/core_model.hpp"
#include "hexagg/datagen.hpp"
#include "hexagg/errors.hpp"
#include "hexagg/interval_set.hpp"
#include "hexagg/io.hpp"
#include "hexagg/metrics.hpp"
#include "hexagg/operators_estimated.hpp"
#include "hexagg/operators_exact.hpp"
#include "hexagg/polynomial.hpp"
#include "hexagg/sweep_integrator.hpp"

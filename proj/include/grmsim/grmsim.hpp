#pragma once

// Umbrella header for the grmsim library.

#include "grmsim/config_json.hpp"
#include "grmsim/csv.hpp"
#include "grmsim/curves.hpp"
#include "grmsim/dependency.hpp"
#include "grmsim/engine.hpp"
#include "grmsim/errors.hpp"
#include "grmsim/item.hpp"
#include "grmsim/normal.hpp"
#include "grmsim/philox.hpp"
#include "grmsim/response.hpp"
#include "grmsim/rng.hpp"
#include "grmsim/run_config.hpp"
#include "grmsim/stats.hpp"
#include "grmsim/svg.hpp"
#include "grmsim/thresholds.hpp"

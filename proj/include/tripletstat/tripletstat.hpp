#pragma once

// Umbrella header: maximum likelihood estimation of a proportion and
// intra-triplet correlations from samples of binary triplets.

#include "tripletstat/diagnostics.hpp"
#include "tripletstat/errors.hpp"
#include "tripletstat/estimator.hpp"
#include "tripletstat/io.hpp"
#include "tripletstat/report.hpp"
#include "tripletstat/rng.hpp"
#include "tripletstat/score.hpp"
#include "tripletstat/simulate.hpp"
#include "tripletstat/types.hpp"
#include "tripletstat/version.hpp"

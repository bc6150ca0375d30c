// Umbrella header.
#pragma once

#include "hypercong/combinatorics.hpp"
#include "hypercong/error.hpp"
#include "hypercong/jet.hpp"
#include "hypercong/padic.hpp"
#include "hypercong/rational.hpp"
#include "hypercong/series.hpp"
#include "hypercong/sweep.hpp"
#include "hypercong/verify.hpp"

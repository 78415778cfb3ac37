#pragma once

#include "rcore/global_prob.hpp"
#include "rcore/hypergraph.hpp"
#include "rcore/local_prob.hpp"
#include "rcore/montecarlo.hpp"
#include "rcore/numerics.hpp"
#include "rcore/prob_value.hpp"
#include "rcore/sweep.hpp"

#pragma once

#include "divapport/algorithms.hpp"
#include "divapport/bench.hpp"
#include "divapport/core.hpp"
#include "divapport/divisor_method.hpp"
#include "divapport/error.hpp"
#include "divapport/fuzz.hpp"
#include "divapport/fuzzy.hpp"
#include "divapport/generators.hpp"
#include "divapport/iterative.hpp"
#include "divapport/jump_step.hpp"
#include "divapport/random.hpp"
#include "divapport/sandwich.hpp"
#include "divapport/selection.hpp"
#include "divapport/votes_io.hpp"

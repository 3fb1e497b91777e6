#pragma once

#include "phasebeam/algebra.hpp"
#include "phasebeam/entropy.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/experiments.hpp"
#include "phasebeam/numeric.hpp"
#include "phasebeam/phase_states.hpp"
#include "phasebeam/splitter.hpp"
#include "phasebeam/table_io.hpp"

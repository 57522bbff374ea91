#pragma once

#include "qharness/error.hpp"
#include "qharness/free_harness.hpp"
#include "qharness/harness.hpp"
#include "qharness/poly.hpp"
#include "qharness/poly_seq.hpp"
#include "qharness/power_series.hpp"
#include "qharness/rational.hpp"
#include "qharness/special.hpp"
#include "qharness/verify.hpp"

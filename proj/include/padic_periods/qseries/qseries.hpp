#pragma once

#include "padic_periods/qseries/cusps.hpp"
#include "padic_periods/qseries/cyclotomic.hpp"
#include "padic_periods/qseries/eta.hpp"
#include "padic_periods/qseries/expansion.hpp"
#include "padic_periods/qseries/rewriter.hpp"

#pragma once

#include "padic_periods/arith/fp2.hpp"
#include "padic_periods/arith/integer.hpp"
#include "padic_periods/arith/padic.hpp"
#include "padic_periods/arith/residual.hpp"
#include "padic_periods/errors.hpp"
#include "padic_periods/pairing/pairing.hpp"
#include "padic_periods/qseries/qseries.hpp"
#include "padic_periods/schottky/schottky.hpp"
#include "padic_periods/supersingular/supersingular.hpp"
#include "padic_periods/theta/theta.hpp"

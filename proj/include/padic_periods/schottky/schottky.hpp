#pragma once

#include "padic_periods/schottky/ball.hpp"
#include "padic_periods/schottky/good_position.hpp"
#include "padic_periods/schottky/group.hpp"
#include "padic_periods/schottky/mobius.hpp"
#include "padic_periods/schottky/tree.hpp"

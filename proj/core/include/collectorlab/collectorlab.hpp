#pragma once

#include "collectorlab/alias_table.hpp"
#include "collectorlab/asymptotics.hpp"
#include "collectorlab/coupon_family.hpp"
#include "collectorlab/errors.hpp"
#include "collectorlab/exact_moments.hpp"
#include "collectorlab/planner.hpp"
#include "collectorlab/random.hpp"
#include "collectorlab/serialization.hpp"
#include "collectorlab/simulator.hpp"

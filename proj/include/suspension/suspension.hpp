#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "commensurability.hpp"
#include "shift.hpp"
#include "roofs.hpp"
#include "decider.hpp"
#include "coded.hpp"
#include "beta.hpp"
#include "two_orbit.hpp"
#include "simulator.hpp"

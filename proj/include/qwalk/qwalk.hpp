#pragma once

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/dtqw.hpp"
#include "qwalk/entropy.hpp"
#include "qwalk/state.hpp"
#include "qwalk/two_particle.hpp"
#include "qwalk/types.hpp"

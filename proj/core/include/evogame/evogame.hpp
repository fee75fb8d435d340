#pragma once

#include "evogame/config.hpp"
#include "evogame/csv.hpp"
#include "evogame/engine.hpp"
#include "evogame/error.hpp"
#include "evogame/experiment.hpp"
#include "evogame/gamespace.hpp"
#include "evogame/population.hpp"
#include "evogame/rng.hpp"
#include "evogame/topology.hpp"

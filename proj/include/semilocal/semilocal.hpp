#pragma once

#include "baselines.hpp"
#include "complexity.hpp"
#include "concrete.hpp"
#include "decomp.hpp"
#include "engine.hpp"
#include "gen.hpp"
#include "mathutil.hpp"
#include "oracles.hpp"
#include "problems.hpp"
#include "semigraph.hpp"
#include "symmetry.hpp"
#include "transform.hpp"

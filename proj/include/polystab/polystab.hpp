#pragma once

#include "polystab/config.hpp"
#include "polystab/core.hpp"
#include "polystab/datko.hpp"
#include "polystab/gallery.hpp"
#include "polystab/measure.hpp"
#include "polystab/quadrature.hpp"
#include "polystab/rng.hpp"
#include "polystab/runner.hpp"
#include "polystab/spaces.hpp"

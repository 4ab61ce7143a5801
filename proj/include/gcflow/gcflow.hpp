#pragma once

#include "gcflow/errors.hpp"
#include "gcflow/sphere_grid.hpp"
#include "gcflow/interpolation.hpp"
#include "gcflow/convex_geometry.hpp"
#include "gcflow/anisotropy.hpp"
#include "gcflow/bodies.hpp"
#include "gcflow/measures.hpp"
#include "gcflow/flow.hpp"
#include "gcflow/subsolution.hpp"
#include "gcflow/oracles.hpp"
#include "gcflow/scenario.hpp"

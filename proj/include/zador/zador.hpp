#pragma once

#include "zador/a15.hpp"
#include "zador/error.hpp"
#include "zador/io.hpp"
#include "zador/mc_oracle.hpp"
#include "zador/merit.hpp"
#include "zador/optimize.hpp"
#include "zador/periodic_structure.hpp"
#include "zador/polytope.hpp"
#include "zador/weighted_voronoi.hpp"

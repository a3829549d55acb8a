#pragma once

#include "canonical.hpp"
#include "census.hpp"
#include "constructions.hpp"
#include "criticality.hpp"
#include "density.hpp"
#include "flow.hpp"
#include "graph6.hpp"
#include "group.hpp"
#include "io.hpp"
#include "multigraph.hpp"
#include "topology.hpp"

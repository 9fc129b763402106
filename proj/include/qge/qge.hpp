#pragma once

#include "qge/bond_solver.hpp"
#include "qge/entanglement.hpp"
#include "qge/graph.hpp"
#include "qge/graph_io.hpp"
#include "qge/qubit.hpp"
#include "qge/smatrix.hpp"
#include "qge/surface.hpp"
#include "qge/version.hpp"

#ifndef COARSEDEG_COARSEDEG_HPP
#define COARSEDEG_COARSEDEG_HPP

// Umbrella header: pulls in the whole library.

#include "coarsedeg/cfpp.hpp"
#include "coarsedeg/chain.hpp"
#include "coarsedeg/cycle.hpp"
#include "coarsedeg/degree.hpp"
#include "coarsedeg/demo.hpp"
#include "coarsedeg/exact.hpp"
#include "coarsedeg/expr.hpp"
#include "coarsedeg/homotopy.hpp"
#include "coarsedeg/lattice.hpp"
#include "coarsedeg/mapparse.hpp"
#include "coarsedeg/maps.hpp"
#include "coarsedeg/serialization.hpp"
#include "coarsedeg/util.hpp"
#include "coarsedeg/version.hpp"

#endif // COARSEDEG_COARSEDEG_HPP

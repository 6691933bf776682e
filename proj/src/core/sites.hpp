#pragma once
// Generators for the standard sites: truncations of the simplex category
// (objects [0..k], monotone maps) and of the category of finite nonempty
// sets (objects 1..k, all functions).

#include "fincat.hpp"

namespace etendue {

// Objects "[0]".."[k]"; morphism ids encode the value sequence, e.g.
// "d1:001" is the monotone map [2] -> [1] with images 0,0,1. Composition is
// function composition. soft_max is the documented guard; raising it past 9
// is rejected because ids encode one digit per value.
FinCategory build_delta(int k, int soft_max = 6);

// Objects "1".."k" (cardinalities); morphism ids "f<cod>:<values>" list the
// 0-based images, e.g. "f2:01" is the identity of "2".
FinCategory build_finset(int k, int soft_max = 4);

}  // namespace etendue

//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_TESTING_RANDOM_COMPLEX_H_
#define FRAGTOK_TESTING_RANDOM_COMPLEX_H_

#include <random>
#include <utility>

#include "fragtok/hiergraph.h"

namespace fragtok::testing {

/// Toy pocket: a few residues with random atoms around the origin.
Entity random_pocket(std::mt19937_64 &rng, int residues);

/// Random drug-like ligand, tokenized with its basic tokens, with atoms
/// scattered inside the pocket.
Entity random_ligand(std::mt19937_64 &rng, int max_atoms);

std::pair<Entity, Entity> random_complex(std::mt19937_64 &rng);

/// Applies x -> R x + t to every atom.
Entity transformed(const Entity &e, const double (&rotation)[3][3],
                   const Vec3 &shift);

/// Random proper rotation matrix.
void random_rotation(std::mt19937_64 &rng, double (&r)[3][3]);

}  // namespace fragtok::testing

#endif  // FRAGTOK_TESTING_RANDOM_COMPLEX_H_

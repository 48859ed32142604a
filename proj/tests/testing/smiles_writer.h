//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_TESTING_SMILES_WRITER_H_
#define FRAGTOK_TESTING_SMILES_WRITER_H_

#include <random>
#include <string>
#include <vector>

#include "fragtok/molecule.h"

namespace fragtok::testing {

/// A valid SMILES for `mol` written from a random start atom with random
/// neighbor order. Every atom is bracketed with its hydrogen count, so the
/// string does not lean on the parser's valence model. Parity labels are
/// carried over.
std::string random_order_smiles(const MoleculeGraph &mol, std::mt19937_64 &rng);

/// Uniform random permutation of 0..n-1.
std::vector<int> random_permutation(int n, std::mt19937_64 &rng);

}  // namespace fragtok::testing

#endif  // FRAGTOK_TESTING_SMILES_WRITER_H_

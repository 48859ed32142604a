//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "canon_internal.h"
#include "fragtok/error.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace {

constexpr double kPlanarVolume = 1e-6;

Vec3 sub(const Vec3 &a, const Vec3 &b) {
  return { a[0] - b[0], a[1] - b[1], a[2] - b[2] };
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return { a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
           a[0] * b[1] - a[1] * b[0] };
}

double dot(const Vec3 &a, const Vec3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

bool is_candidate(const MoleculeGraph &mol, int atom,
                  const std::vector<int> &classes) {
  const int h = mol.atom(atom).implicit_h;
  if (h > 1 || mol.degree(atom) + h != 4)
    return false;
  std::vector<int> nbr_classes;
  for (const Neighbor &nb: mol.neighbors(atom))
    nbr_classes.push_back(classes[nb.atom]);
  std::sort(nbr_classes.begin(), nbr_classes.end());
  return std::adjacent_find(nbr_classes.begin(), nbr_classes.end())
         == nbr_classes.end();
}

const Vec3 &require_coords(const MoleculeGraph &mol, int atom) {
  if (!mol.atom(atom).coords)
    throw Error(ErrorCode::kMissingCoordinates,
                "atom " + std::to_string(atom) + " has no coordinates");
  return *mol.atom(atom).coords;
}

}  // namespace

MoleculeGraph assign_chirality_from_coords(MoleculeGraph mol) {
  const std::vector<int> classes = internal::symmetry_classes(mol);
  std::vector<Chirality> assigned(mol.num_atoms(), Chirality::kNone);
  std::vector<bool> candidate(mol.num_atoms(), false);

  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (!is_candidate(mol, i, classes))
      continue;
    candidate[i] = true;
    const Vec3 &center = require_coords(mol, i);

    // The implicit hydrogen is placed opposite the mean heavy-atom direction.
    Vec3 h_dir { 0, 0, 0 };
    for (const Neighbor &nb: mol.neighbors(i)) {
      const Vec3 d = sub(require_coords(mol, nb.atom), center);
      const double len = std::sqrt(dot(d, d));
      if (len > 0) {
        for (int k = 0; k < 3; ++k)
          h_dir[k] += d[k] / len;
      }
    }

    std::vector<Vec3> p;
    for (int x: stored_neighbor_order(mol, i)) {
      if (x == kImplicitNeighbor)
        p.push_back(sub(center, h_dir));
      else
        p.push_back(*mol.atom(x).coords);
    }
    const double volume =
        dot(sub(p[1], p[0]), cross(sub(p[2], p[0]), sub(p[3], p[0])));
    if (std::abs(volume) < kPlanarVolume)
      continue;
    // Viewed from the first neighbor, a clockwise turn of the remaining three
    // gives a positive volume.
    assigned[i] = volume < 0 ? Chirality::kCCW : Chirality::kCW;
  }

  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (candidate[i])
      mol.atom(i).chirality = assigned[i];
  }
  return mol;
}

MoleculeGraph strip_chirality(MoleculeGraph mol) {
  for (int i = 0; i < mol.num_atoms(); ++i)
    mol.atom(i).chirality = Chirality::kNone;
  return mol;
}

}  // namespace fragtok

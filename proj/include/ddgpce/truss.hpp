#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ddgpce {

/// Linear-elastic space truss of two-node bar elements.
///
/// Element e takes its cross-sectional area from input component
/// area_map[e], or from fixed_areas[e] when area_map[e] < 0. Its modulus is
/// youngs_modulus * modulus_factors[e].
struct TrussModel {
  Eigen::Matrix3Xd nodes;                        // coordinates, one column per node
  std::vector<std::array<int, 2>> elements;      // 0-based node pairs
  double youngs_modulus = 1e7;
  double density = 0.1;                          // informational only
  Eigen::VectorXd modulus_factors;               // per element, default ones
  std::vector<std::array<bool, 3>> fixed;        // per node, per axis
  Eigen::Matrix3Xd loads;                        // per node force vectors
  std::vector<int> area_map;                     // element -> input index, -1 fixed
  Eigen::VectorXd fixed_areas;                   // used where area_map < 0
  int horizontal_axis = 0;                       // u component of y1
  int vertical_axis = 2;                         // v component of y1

  std::size_t node_count() const { return static_cast<std::size_t>(nodes.cols()); }
  std::size_t element_count() const { return elements.size(); }
  /// Number of input components the areas are drawn from.
  std::size_t input_dimension() const;

  /// Throws InvalidArgument on inconsistent sizes or indices.
  void validate() const;
};

struct TrussResponse {
  Eigen::Matrix3Xd displacements;   // per node
  Eigen::VectorXd forces;           // axial force per element, tension positive
  Eigen::VectorXd stresses;         // axial stress per element
  Eigen::VectorXd elongations;
  double residual = 0.0;            // ||K u - f|| / ||f|| on the free DOFs
};

/// Assembles and solves K u = f on the free DOFs. SingularStiffness when an
/// area is not positive or the supports leave a mechanism.
TrussResponse truss_solve(const TrussModel& truss, const Eigen::VectorXd& inputs);

struct TrussOutputs {
  double y1 = 0.0;   // max |u|, |v| over nodes with a free DOF
  double y2 = 0.0;   // max |stress| over elements
};

TrussOutputs truss_outputs(const TrussModel& truss, const TrussResponse& response);
TrussOutputs truss_outputs_y1_y2(const TrussModel& truss, const Eigen::VectorXd& inputs);

/// Cantilevered 12-node, 36-bar space truss with a triangular cross-section.
/// Nodes 1-3 (indices 0-2) form the pinned root section at x = 0; sections
/// of three nodes follow every 120 in along x. The triangle has vertices
/// (y, z) = (-30, 0), (30, 0), (0, 52). A 100 lb downward load acts on
/// node 10 (tip section, first vertex). E = 1e7 psi; element e takes area
/// from input e. Elements 0-26 are the bays (per bay: three chords, then
/// two diagonals on each of the three faces), elements 27-35 close the
/// three free cross-sections.
TrussModel builtin_truss36();

/// Cheap companion of builtin_truss36: per-element moduli scaled by
/// kLowModulusScale * (1 + kLowModulusRipple * cos(2 pi (e + 1) / 36)).
TrussModel builtin_truss36_low();

inline constexpr double kLowModulusScale = 0.9;
inline constexpr double kLowModulusRipple = 0.15;

}  // namespace ddgpce

#include "ddgpce/truss.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ddgpce/error.hpp"

namespace ddgpce {

std::size_t TrussModel::input_dimension() const {
  int top = -1;
  for (int a : area_map) top = std::max(top, a);
  return static_cast<std::size_t>(top + 1);
}

void TrussModel::validate() const {
  const auto n = static_cast<int>(nodes.cols());
  const auto ne = elements.size();
  require(n >= 2, ErrorKind::InvalidArgument, "truss needs at least two nodes");
  require(ne >= 1, ErrorKind::InvalidArgument, "truss needs at least one element");
  require(fixed.size() == static_cast<std::size_t>(n), ErrorKind::InvalidArgument,
          "support flags must be given for every node");
  require(loads.cols() == n, ErrorKind::InvalidArgument, "loads must be given for every node");
  require(area_map.size() == ne, ErrorKind::InvalidArgument,
          "area_map must have one entry per element");
  require(static_cast<std::size_t>(modulus_factors.size()) == ne, ErrorKind::InvalidArgument,
          "modulus_factors must have one entry per element");
  require(youngs_modulus > 0.0, ErrorKind::InvalidArgument, "Young's modulus must be positive");
  require(horizontal_axis >= 0 && horizontal_axis < 3 && vertical_axis >= 0 && vertical_axis < 3,
          ErrorKind::InvalidArgument, "displacement axes must be 0, 1 or 2");
  for (std::size_t e = 0; e < ne; ++e) {
    const auto [a, b] = elements[e];
    require(a >= 0 && a < n && b >= 0 && b < n && a != b, ErrorKind::InvalidArgument,
            "element " + std::to_string(e) + " has invalid node indices");
    require((nodes.col(a) - nodes.col(b)).norm() > 0.0, ErrorKind::InvalidArgument,
            "element " + std::to_string(e) + " has zero length");
    if (area_map[e] < 0) {
      require(static_cast<std::size_t>(fixed_areas.size()) == ne, ErrorKind::InvalidArgument,
              "element " + std::to_string(e) + " needs a fixed area");
    }
  }
}

TrussResponse truss_solve(const TrussModel& truss, const Eigen::VectorXd& inputs) {
  const auto n = static_cast<Eigen::Index>(truss.node_count());
  const std::size_t ne = truss.element_count();
  require(static_cast<std::size_t>(inputs.size()) >= truss.input_dimension(),
          ErrorKind::InvalidArgument, "truss needs " + std::to_string(truss.input_dimension()) +
                                          " area inputs, got " + std::to_string(inputs.size()));

  // Free DOF numbering.
  std::vector<Eigen::Index> dof(static_cast<std::size_t>(3 * n), -1);
  Eigen::Index free_count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) {
      if (!truss.fixed[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)]) {
        dof[static_cast<std::size_t>(3 * i + d)] = free_count++;
      }
    }
  }

  Eigen::VectorXd areas(static_cast<Eigen::Index>(ne));
  Eigen::VectorXd axial(static_cast<Eigen::Index>(ne));  // E A / L0
  std::vector<Eigen::Vector3d> direction(ne);
  std::vector<double> length(ne);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(free_count, free_count);
  for (std::size_t e = 0; e < ne; ++e) {
    const int map = truss.area_map[e];
    const double area = map >= 0 ? inputs(map) : truss.fixed_areas(static_cast<Eigen::Index>(e));
    require(area > 0.0 && std::isfinite(area), ErrorKind::SingularStiffness,
            "element " + std::to_string(e) + " has non-positive area " + std::to_string(area));
    const auto [a, b] = truss.elements[e];
    const Eigen::Vector3d delta = truss.nodes.col(b) - truss.nodes.col(a);
    length[e] = delta.norm();
    direction[e] = delta / length[e];
    areas(static_cast<Eigen::Index>(e)) = area;
    const double modulus =
        truss.youngs_modulus * truss.modulus_factors(static_cast<Eigen::Index>(e));
    axial(static_cast<Eigen::Index>(e)) = modulus * area / length[e];
    const Eigen::Matrix3d block = axial(static_cast<Eigen::Index>(e)) *
                                  direction[e] * direction[e].transpose();
    const std::array<int, 2> ends{a, b};
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        const double sign = p == q ? 1.0 : -1.0;
        for (int r = 0; r < 3; ++r) {
          const Eigen::Index row = dof[static_cast<std::size_t>(3 * ends[p] + r)];
          if (row < 0) continue;
          for (int c = 0; c < 3; ++c) {
            const Eigen::Index col = dof[static_cast<std::size_t>(3 * ends[q] + c)];
            if (col < 0) continue;
            k(row, col) += sign * block(r, c);
          }
        }
      }
    }
  }

  Eigen::VectorXd f(free_count);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) {
      const Eigen::Index row = dof[static_cast<std::size_t>(3 * i + d)];
      if (row >= 0) f(row) = truss.loads(d, i);
    }
  }

  Eigen::VectorXd u_free;
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() == Eigen::Success) {
    u_free = llt.solve(f);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
    require(lu.rank() == free_count, ErrorKind::SingularStiffness,
            "stiffness matrix is singular: the supports leave a mechanism");
    u_free = lu.solve(f);
  }
  require(u_free.allFinite(), ErrorKind::SingularStiffness, "truss solve produced non-finite displacements");

  TrussResponse out;
  const double f_norm = f.norm();
  out.residual = f_norm > 0.0 ? (k * u_free - f).norm() / f_norm : (k * u_free).norm();
  out.displacements = Eigen::Matrix3Xd::Zero(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) {
      const Eigen::Index row = dof[static_cast<std::size_t>(3 * i + d)];
      if (row >= 0) out.displacements(d, i) = u_free(row);
    }
  }
  out.forces.resize(static_cast<Eigen::Index>(ne));
  out.stresses.resize(static_cast<Eigen::Index>(ne));
  out.elongations.resize(static_cast<Eigen::Index>(ne));
  for (std::size_t e = 0; e < ne; ++e) {
    const auto [a, b] = truss.elements[e];
    const auto idx = static_cast<Eigen::Index>(e);
    const double elongation =
        direction[e].dot(out.displacements.col(b) - out.displacements.col(a));
    out.elongations(idx) = elongation;
    out.forces(idx) = axial(idx) * elongation;
    out.stresses(idx) = out.forces(idx) / areas(idx);
  }
  return out;
}

TrussOutputs truss_outputs(const TrussModel& truss, const TrussResponse& response) {
  TrussOutputs out;
  for (std::size_t i = 0; i < truss.node_count(); ++i) {
    const auto& f = truss.fixed[i];
    if (f[0] && f[1] && f[2]) continue;
    const auto col = static_cast<Eigen::Index>(i);
    out.y1 = std::max({out.y1, std::abs(response.displacements(truss.horizontal_axis, col)),
                       std::abs(response.displacements(truss.vertical_axis, col))});
  }
  out.y2 = response.stresses.cwiseAbs().maxCoeff();
  return out;
}

TrussOutputs truss_outputs_y1_y2(const TrussModel& truss, const Eigen::VectorXd& inputs) {
  return truss_outputs(truss, truss_solve(truss, inputs));
}

TrussModel builtin_truss36() {
  constexpr int kSections = 4;
  constexpr double kBay = 120.0;
  const std::array<std::array<double, 2>, 3> vertex{{{-30.0, 0.0}, {30.0, 0.0}, {0.0, 52.0}}};

  TrussModel t;
  t.nodes.resize(3, 3 * kSections);
  for (int s = 0; s < kSections; ++s) {
    for (int v = 0; v < 3; ++v) {
      t.nodes.col(3 * s + v) << kBay * s, vertex[static_cast<std::size_t>(v)][0],
          vertex[static_cast<std::size_t>(v)][1];
    }
  }
  for (int s = 0; s + 1 < kSections; ++s) {
    for (int v = 0; v < 3; ++v) t.elements.push_back({3 * s + v, 3 * (s + 1) + v});
    for (int v = 0; v < 3; ++v) {
      const int w = (v + 1) % 3;
      t.elements.push_back({3 * s + v, 3 * (s + 1) + w});
      t.elements.push_back({3 * s + w, 3 * (s + 1) + v});
    }
  }
  for (int s = 1; s < kSections; ++s) {
    for (int v = 0; v < 3; ++v) t.elements.push_back({3 * s + v, 3 * s + (v + 1) % 3});
  }
  const auto ne = t.elements.size();
  t.youngs_modulus = 1e7;
  t.density = 0.1;
  t.modulus_factors = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ne));
  t.fixed.assign(static_cast<std::size_t>(3 * kSections), {false, false, false});
  for (int i = 0; i < 3; ++i) t.fixed[static_cast<std::size_t>(i)] = {true, true, true};
  t.loads = Eigen::Matrix3Xd::Zero(3, 3 * kSections);
  t.loads(2, 9) = -100.0;
  t.area_map.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) t.area_map[e] = static_cast<int>(e);
  return t;
}

TrussModel builtin_truss36_low() {
  TrussModel t = builtin_truss36();
  for (Eigen::Index e = 0; e < t.modulus_factors.size(); ++e) {
    t.modulus_factors(e) =
        kLowModulusScale *
        (1.0 + kLowModulusRipple * std::cos(2.0 * std::numbers::pi * static_cast<double>(e + 1) / 36.0));
  }
  return t;
}

}  // namespace ddgpce

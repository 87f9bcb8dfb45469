#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace moranlab {

// An initial condition on [0,1]: a point mass, a density given analytically,
// or a tabulated density (piecewise-linear between sorted sample points).
// Densities are normalized on use, so tables and formulas need not integrate
// to one.
class InitialCondition {
  public:
    enum class Kind { Delta, Density, Table };

    static InitialCondition delta(double x0);
    static InitialCondition from_density(std::function<double(double)> f, std::string label = "density");
    static InitialCondition from_table(std::vector<std::pair<double, double>> xy);

    // Named forms accepted by the command line and tests:
    //   "uniform", "6x(1-x)", "20x3(1-x)", "delta:<x0>", "file:<path>"
    static InitialCondition parse(const std::string& text);

    Kind kind() const { return kind_; }
    double delta_position() const;
    double density_at(double x) const;  // unnormalized; Delta kind throws
    const std::string& label() const { return label_; }

    // Probability vector over the nodes i/grid, i = 0..grid: a delta is one
    // full cell of mass at the nearest node (half-ties round down); a density
    // is sampled at the nodes and normalized.
    std::vector<double> discretize(int grid) const;

  private:
    InitialCondition() = default;
    Kind kind_ = Kind::Delta;
    double x0_ = 0.5;
    std::function<double(double)> f_;
    std::vector<std::pair<double, double>> table_;
    std::string label_;
};

// Node index of a point mass at x0 on a grid with `grid` cells: nearest node,
// half-ties toward zero.
int delta_node(double x0, int grid);

}  // namespace moranlab

#include "moranlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace moranlab {

int delta_node(double x0, int grid) {
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("delta position outside [0,1]");
    return static_cast<int>(std::ceil(x0 * grid - 0.5));
}

InitialCondition InitialCondition::delta(double x0) {
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("delta position outside [0,1]");
    InitialCondition ic;
    ic.kind_ = Kind::Delta;
    ic.x0_ = x0;
    ic.label_ = "delta";
    return ic;
}

InitialCondition InitialCondition::from_density(std::function<double(double)> f, std::string label) {
    if (!f) throw std::invalid_argument("empty density function");
    InitialCondition ic;
    ic.kind_ = Kind::Density;
    ic.f_ = std::move(f);
    ic.label_ = std::move(label);
    return ic;
}

InitialCondition InitialCondition::from_table(std::vector<std::pair<double, double>> xy) {
    if (xy.size() < 2) throw std::invalid_argument("tabulated density needs at least two points");
    std::sort(xy.begin(), xy.end());
    for (const auto& [x, v] : xy) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("table abscissa outside [0,1]");
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("table value must be nonnegative");
    }
    InitialCondition ic;
    ic.kind_ = Kind::Table;
    ic.table_ = std::move(xy);
    ic.label_ = "table";
    return ic;
}

InitialCondition InitialCondition::parse(const std::string& text) {
    if (text == "uniform") {
        return from_density([](double) { return 1.0; }, "uniform");
    }
    if (text == "6x(1-x)") {
        return from_density([](double x) { return 6.0 * x * (1.0 - x); }, text);
    }
    if (text == "20x3(1-x)") {
        return from_density([](double x) { return 20.0 * x * x * x * (1.0 - x); }, text);
    }
    if (text.rfind("delta:", 0) == 0) {
        std::size_t used = 0;
        const std::string arg = text.substr(6);
        const double x0 = std::stod(arg, &used);
        if (used != arg.size()) throw std::invalid_argument("bad delta position: " + arg);
        return delta(x0);
    }
    if (text.rfind("file:", 0) == 0) {
        const std::string path = text.substr(5);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open density file: " + path);
        std::vector<std::pair<double, double>> xy;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream row(line);
            double x, v;
            char sep = ' ';
            if (row >> x) {
                row >> sep;
                if (sep != ',') row.putback(sep);
                if (row >> v) xy.emplace_back(x, v);
            }
        }
        return from_table(std::move(xy));
    }
    throw std::invalid_argument("unknown initial condition: " + text);
}

double InitialCondition::delta_position() const {
    if (kind_ != Kind::Delta) throw std::logic_error("not a point mass");
    return x0_;
}

double InitialCondition::density_at(double x) const {
    switch (kind_) {
        case Kind::Delta:
            throw std::logic_error("point mass has no density");
        case Kind::Density:
            return f_(x);
        case Kind::Table: {
            if (x <= table_.front().first) return table_.front().second;
            if (x >= table_.back().first) return table_.back().second;
            auto it = std::lower_bound(table_.begin(), table_.end(), std::make_pair(x, -1.0));
            const auto& [x1, v1] = *it;
            const auto& [x0, v0] = *(it - 1);
            const double w = (x - x0) / (x1 - x0);
            return v0 + w * (v1 - v0);
        }
    }
    return 0.0;
}

std::vector<double> InitialCondition::discretize(int grid) const {
    if (grid < 2) throw std::invalid_argument("grid must have at least 2 cells");
    std::vector<double> P(static_cast<std::size_t>(grid) + 1, 0.0);
    if (kind_ == Kind::Delta) {
        P[static_cast<std::size_t>(delta_node(x0_, grid))] = 1.0;
        return P;
    }
    double total = 0.0;
    for (int i = 1; i < grid; ++i) {
        const double v = density_at(static_cast<double>(i) / grid);
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("density must be finite and nonnegative");
        }
        P[static_cast<std::size_t>(i)] = v;
        total += v;
    }
    if (!(total > 0.0)) throw std::invalid_argument("density vanishes on the grid");
    for (int i = 1; i < grid; ++i) P[static_cast<std::size_t>(i)] /= total;
    return P;
}

}  // namespace moranlab

#include "mhdq/reflection.hpp"

#include <stdexcept>

namespace mhdq {

namespace {
void require_half(const Grid& g)
{
    if (g.kind != DomainKind::half) throw std::invalid_argument("expected a half-box field");
}
}  // namespace

Field extend(const Field& quarter)
{
    const Grid& q = quarter.grid();
    if (q.kind != DomainKind::quarter || q.origin[2] != 0.0) {
        throw std::invalid_argument("extend needs a cell-centered quarter-box field with its x3 wall at 0");
    }
    const ParitySignature parity;
    Field half(q.reflected());
    const int n3 = q.cells[2];
    quarter.for_each_cell([&](int i, int j, int k) {
        half.at(i, j, n3 + k) = quarter.at(i, j, k);
        half.at(i, j, n3 - 1 - k) = parity.apply(quarter.at(i, j, k));
    });
    return half;
}

Field restrict(const Field& half)
{
    require_half(half.grid());
    Field quarter(half.grid().unreflected());
    const int n3 = quarter.grid().cells[2];
    quarter.for_each_cell([&](int i, int j, int k) { quarter.at(i, j, k) = half.at(i, j, n3 + k); });
    return quarter;
}

Field mirror(const Field& half)
{
    require_half(half.grid());
    const ParitySignature parity;
    Field out(half.grid());
    const int n = half.grid().cells[2];
    half.for_each_cell([&](int i, int j, int k) { out.at(i, j, k) = parity.apply(half.at(i, j, n - 1 - k)); });
    return out;
}

Vector8d parity_defect(const Field& half)
{
    return max_abs_difference(half, mirror(half));
}

ParityWitness find_parity_witness(const Field& half)
{
    const Field m = mirror(half);
    ParityWitness w;
    half.for_each_cell([&](int i, int j, int k) {
        if (w.found) return;
        for (int c = 0; c < num_components; ++c) {
            if (half(i, j, k, c) != m(i, j, k, c)) {
                w = {true, i, j, k, c, m(i, j, k, c), half(i, j, k, c)};
                return;
            }
        }
    });
    return w;
}

}  // namespace mhdq

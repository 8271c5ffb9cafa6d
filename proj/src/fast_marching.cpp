#include "cahs/fast_marching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cahs/errors.hpp"

namespace cahs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status : std::uint8_t { Far, Trial, Accepted };

/// Binary min-heap over cell indices with back-pointers for decrease-key.
class CellHeap {
public:
    explicit CellHeap(std::size_t cells) : pos_(cells, kAbsent) {}

    bool empty() const { return heap_.empty(); }
    bool contains(std::size_t cell) const { return pos_[cell] != kAbsent; }

    void push_or_update(std::size_t cell, double value) {
        if (pos_[cell] == kAbsent) {
            pos_[cell] = heap_.size();
            heap_.push_back({value, cell});
            sift_up(heap_.size() - 1);
        } else if (value < heap_[pos_[cell]].value) {
            heap_[pos_[cell]].value = value;
            sift_up(pos_[cell]);
        }
    }

    std::pair<std::size_t, double> pop() {
        const auto top = heap_.front();
        swap_entries(0, heap_.size() - 1);
        heap_.pop_back();
        pos_[top.cell] = kAbsent;
        if (!heap_.empty()) sift_down(0);
        return {top.cell, top.value};
    }

private:
    struct Entry {
        double value;
        std::size_t cell;
    };
    static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

    void swap_entries(std::size_t a, std::size_t b) {
        std::swap(heap_[a], heap_[b]);
        pos_[heap_[a].cell] = a;
        pos_[heap_[b].cell] = b;
    }
    void sift_up(std::size_t i) {
        while (i > 0) {
            std::size_t parent = (i - 1) / 2;
            if (heap_[parent].value <= heap_[i].value) break;
            swap_entries(parent, i);
            i = parent;
        }
    }
    void sift_down(std::size_t i) {
        for (;;) {
            std::size_t l = 2 * i + 1, r = 2 * i + 2, m = i;
            if (l < heap_.size() && heap_[l].value < heap_[m].value) m = l;
            if (r < heap_.size() && heap_[r].value < heap_[m].value) m = r;
            if (m == i) break;
            swap_entries(i, m);
            i = m;
        }
    }

    std::vector<Entry> heap_;
    std::vector<std::size_t> pos_;
};

/// Solve sum_i ((u - a_i)/h)^2 = 1 over the axis minima a_i, using the
/// largest consistent subset (u must exceed every a_i used).
double solve_upwind(std::vector<double>& a, double h) {
    std::sort(a.begin(), a.end());
    for (int k = static_cast<int>(a.size()); k >= 1; --k) {
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < k; ++i) {
            s1 += a[i];
            s2 += a[i] * a[i];
        }
        const double disc = s1 * s1 - k * (s2 - h * h);
        if (disc < 0.0) continue;
        const double u = (s1 + std::sqrt(disc)) / k;
        if (k == 1 || u >= a[k - 1]) return u;
    }
    return a.front() + h;  // unreachable for valid inputs
}

}  // namespace

GridScalarField fmm_distance(const GridSpec& spec, const std::vector<std::uint8_t>& seed_mask) {
    if (spec.dim != 2 && spec.dim != 3) throw UnsupportedError("fast marching needs dim 2 or 3");
    if (!(spec.h > 0.0)) throw InvalidConstantError("grid spacing must be positive");
    if (seed_mask.size() != spec.cell_count()) throw Error("seed mask size mismatch");
    bool has_seed = false;
    for (auto c : seed_mask)
        if (c) {
            has_seed = true;
            break;
        }
    if (!has_seed) throw InvalidConstantError("fast marching seed is empty");

    const int nz = spec.dim == 3 ? spec.nz : 1;
    std::vector<double> dist(spec.cell_count(), kInf);
    std::vector<Status> status(spec.cell_count(), Status::Far);

    // Freeze exact distances to the seed point set in a collar whose width is
    // a fixed fraction of the domain, not of h. A collar scaling with h leaves
    // the usual h*log(1/h) pollution from curved sources; a fixed physical
    // radius keeps the marching error first order all the way in.
    int min_side = std::min(spec.nx, spec.ny) - 1;
    if (spec.dim == 3) min_side = std::min(min_side, spec.nz - 1);
    const int ring = std::max(2, min_side / 16);
    const int window = ring + 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                bool near = false;
                for (int dk = -ring; dk <= ring && !near; ++dk)
                    for (int dj = -ring; dj <= ring && !near; ++dj)
                        for (int di = -ring; di <= ring && !near; ++di) {
                            int kk = spec.dim == 3 ? k + dk : 0;
                            if (spec.dim == 2 && dk != 0) continue;
                            if (spec.in_bounds(i + di, j + dj, kk) &&
                                seed_mask[spec.index(i + di, j + dj, kk)])
                                near = true;
                        }
                if (!near) continue;
                double best = kInf;
                for (int dk = -window; dk <= window; ++dk)
                    for (int dj = -window; dj <= window; ++dj)
                        for (int di = -window; di <= window; ++di) {
                            if (spec.dim == 2 && dk != 0) continue;
                            int kk = spec.dim == 3 ? k + dk : 0;
                            if (!spec.in_bounds(i + di, j + dj, kk) ||
                                !seed_mask[spec.index(i + di, j + dj, kk)])
                                continue;
                            const double dd =
                                std::sqrt(double(di) * di + double(dj) * dj + double(dk) * dk);
                            best = std::min(best, spec.h * dd);
                        }
                const std::size_t c = spec.index(i, j, k);
                dist[c] = best;
                status[c] = Status::Accepted;
            }

    CellHeap heap(spec.cell_count());

    const int n_neighbors = spec.dim == 3 ? 6 : 4;
    const int off[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

    auto update_cell = [&](int i, int j, int k) {
        const std::size_t c = spec.index(i, j, k);
        if (status[c] == Status::Accepted) return;
        std::vector<double> mins;
        mins.reserve(spec.dim);
        for (int axis = 0; axis < spec.dim; ++axis) {
            double m = kInf;
            for (int s = 0; s < 2; ++s) {
                const int ii = i + off[2 * axis + s][0];
                const int jj = j + off[2 * axis + s][1];
                const int kk = k + off[2 * axis + s][2];
                if (!spec.in_bounds(ii, jj, kk)) continue;
                const std::size_t nb = spec.index(ii, jj, kk);
                if (status[nb] == Status::Accepted) m = std::min(m, dist[nb]);
            }
            if (m < kInf) mins.push_back(m);
        }
        if (mins.empty()) return;
        const double u = solve_upwind(mins, spec.h);
        if (u < dist[c]) {
            dist[c] = u;
            status[c] = Status::Trial;
            heap.push_or_update(c, u);
        }
    };

    // Seed the narrow band around the frozen region.
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                if (status[spec.index(i, j, k)] != Status::Accepted) continue;
                for (int s = 0; s < n_neighbors; ++s) {
                    const int ii = i + off[s][0], jj = j + off[s][1], kk = k + off[s][2];
                    if (spec.in_bounds(ii, jj, kk)) update_cell(ii, jj, kk);
                }
            }

    while (!heap.empty()) {
        const auto [c, value] = heap.pop();
        status[c] = Status::Accepted;
        dist[c] = value;
        const int i = static_cast<int>(c % spec.nx);
        const int j = static_cast<int>((c / spec.nx) % spec.ny);
        const int k = static_cast<int>(c / (static_cast<std::size_t>(spec.nx) * spec.ny));
        for (int s = 0; s < n_neighbors; ++s) {
            const int ii = i + off[s][0], jj = j + off[s][1], kk = k + off[s][2];
            if (spec.in_bounds(ii, jj, kk)) update_cell(ii, jj, kk);
        }
    }

    return GridScalarField(spec, std::move(dist));
}

}  // namespace cahs

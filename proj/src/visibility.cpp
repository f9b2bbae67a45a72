#include "vbm/visibility.hpp"

#include <stdexcept>

namespace vbm {

VisibilityStore::VisibilityStore(double tau) : tau_(tau) {
    if (!(tau > 0.0) || tau > 1.0)
        throw std::invalid_argument("visibility threshold must be in (0, 1]");
    keys_.assign(1024, kEmpty);
    values_.assign(1024, 0.0);
    mask_ = keys_.size() - 1;
}

const double* VisibilityStore::find(std::uint64_t key) const {
    std::size_t i = static_cast<std::size_t>(key * 0x9E3779B97F4A7C15ull) & mask_;
    while (keys_[i] != kEmpty) {
        if (keys_[i] == key) return &values_[i];
        i = (i + 1) & mask_;
    }
    return nullptr;
}

void VisibilityStore::insert(std::uint64_t key, double value) {
    if (count_ * 10 >= keys_.size() * 7) grow();
    std::size_t i = static_cast<std::size_t>(key * 0x9E3779B97F4A7C15ull) & mask_;
    while (keys_[i] != kEmpty) {
        if (keys_[i] == key) {
            values_[i] = value;
            return;
        }
        i = (i + 1) & mask_;
    }
    keys_[i] = key;
    values_[i] = value;
    ++count_;
    ++inserts_;
}

void VisibilityStore::grow() {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<double> old_values = std::move(values_);
    keys_.assign(old_keys.size() * 2, kEmpty);
    values_.assign(old_values.size() * 2, 0.0);
    mask_ = keys_.size() - 1;
    for (std::size_t j = 0; j < old_keys.size(); ++j) {
        if (old_keys[j] == kEmpty) continue;
        std::size_t i = static_cast<std::size_t>(old_keys[j] * 0x9E3779B97F4A7C15ull) & mask_;
        while (keys_[i] != kEmpty) i = (i + 1) & mask_;
        keys_[i] = old_keys[j];
        values_[i] = old_values[j];
    }
}

bool los_exact(const OccupancyGrid& grid, Cell g, Cell c, bool ignore_target) {
    const auto blocked = [&](Cell q) {
        if (ignore_target && q == c) return false;
        return grid.occupied(q);
    };
    return detail::walk_supercover(
        g, c, [&](Cell q) { return !blocked(q); },
        [&](Cell s1, Cell s2) { return !(blocked(s1) && blocked(s2)); });
}

namespace {

// Upwind dependencies of `c` relative to pivot `g`: the neighbors one step
// closer to the pivot along each axis with a nonzero offset.
struct Deps {
    Cell cells[2];
    double weights[2];
    int count = 0;
};

Deps deps_of(Cell g, Cell c) {
    Deps d;
    const int dx = c.x - g.x;
    const int dy = c.y - g.y;
    if (dx != 0) {
        d.cells[d.count] = {c.x - (dx > 0 ? 1 : -1), c.y};
        d.weights[d.count] = dx > 0 ? dx : -dx;
        ++d.count;
    }
    if (dy != 0) {
        d.cells[d.count] = {c.x, c.y - (dy > 0 ? 1 : -1)};
        d.weights[d.count] = dy > 0 ? dy : -dy;
        ++d.count;
    }
    return d;
}

}  // namespace

double score_dp(VisibilityStore& store, const OccupancyGrid& grid, Cell pivot, Cell target,
                bool ignore_target) {
    if (!grid.in_bounds(pivot) || !grid.in_bounds(target))
        throw std::invalid_argument("score_dp: cell out of bounds");
    if (grid.occupied(pivot)) throw std::invalid_argument("score_dp: pivot is occupied");

    const int pivot_idx = grid.index(pivot);
    const auto key_of = [&](Cell q) { return VisibilityStore::make_key(pivot_idx, grid.index(q)); };

    if (ignore_target) {
        // Synthetic value for an occupied target: combine the normally-scored
        // dependencies without memoizing the result.
        if (target == pivot) return 1.0;
        const Deps d = deps_of(pivot, target);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < d.count; ++i) {
            num += d.weights[i] * score_dp(store, grid, pivot, d.cells[i]);
            den += d.weights[i];
        }
        return num / den;
    }

    if (const double* hit = store.find(key_of(target))) return *hit;

    std::vector<Cell> stack;
    stack.push_back(target);
    while (!stack.empty()) {
        const Cell cur = stack.back();
        if (store.find(key_of(cur))) {
            stack.pop_back();
            continue;
        }
        if (grid.occupied(cur)) {
            store.insert(key_of(cur), 0.0);
            stack.pop_back();
            continue;
        }
        if (cur == pivot) {
            store.insert(key_of(cur), 1.0);
            stack.pop_back();
            continue;
        }
        const Deps d = deps_of(pivot, cur);
        bool ready = true;
        for (int i = 0; i < d.count; ++i) {
            if (store.find(key_of(d.cells[i])) == nullptr) {
                stack.push_back(d.cells[i]);
                ready = false;
            }
        }
        if (!ready) continue;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < d.count; ++i) {
            num += d.weights[i] * *store.find(key_of(d.cells[i]));
            den += d.weights[i];
        }
        store.insert(key_of(cur), num / den);
        stack.pop_back();
    }
    return *store.find(key_of(target));
}

bool visible(VisibilityStore& store, const OccupancyGrid& grid, VisibilityBackend backend,
             Cell pivot, Cell target, bool ignore_target) {
    if (backend == VisibilityBackend::exact) return los_exact(grid, pivot, target, ignore_target);
    return score_dp(store, grid, pivot, target, ignore_target) >= store.tau();
}

}  // namespace vbm

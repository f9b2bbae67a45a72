#include "vbm/march.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "march_engine.hpp"

namespace vbm {

namespace {

struct QueueEntry {
    double key;  // pop priority: cumulative distance, plus the heuristic in goal mode
    double d;    // cumulative distance at push time; stale when > dist[idx]
    int idx;
};

// Min-key ordering; ties prefer the larger cumulative distance (deeper
// nodes first), then the smaller cell index, so pops are deterministic.
struct QueueOrder {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.key != b.key) return a.key > b.key;
        if (a.d != b.d) return a.d < b.d;
        return a.idx > b.idx;
    }
};

// Strict improvement by more than 1e-12 relative, preventing oscillation
// between symmetric parents.
inline bool improves(double candidate, double incumbent) {
    if (incumbent == kInf) return candidate < kInf;
    return incumbent - candidate > 1e-12 * incumbent;
}

}  // namespace

namespace detail {

MarchResult run_wavefront(const OccupancyGrid& grid, const std::vector<Cell>& sources,
                          const MarchOptions& options, const Cell* goal, bool* goal_reached) {
    if (sources.empty()) throw std::invalid_argument("march: source list is empty");
    for (const Cell& s : sources) {
        if (!grid.in_bounds(s)) throw std::invalid_argument("march: source out of bounds");
        if (grid.occupied(s)) throw std::invalid_argument("march: source is occupied");
    }
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (std::size_t j = i + 1; j < sources.size(); ++j)
            if (sources[i] == sources[j])
                throw std::invalid_argument("march: duplicate source");

    const std::size_t n = grid.size();
    MarchResult r;
    r.width = grid.width();
    r.height = grid.height();
    r.dist.assign(n, kInf);
    r.parents.assign(n, -1);
    r.visited.assign(n, 0);
    r.pivot_mask.assign(n, 0);
    r.store = VisibilityStore(options.tau);
    r.metric = options.metric;
    r.backend = options.backend;

    const Metric& metric = options.metric;
    const int goal_idx = goal ? grid.index(*goal) : -1;
    const auto key_of = [&](Cell c, double d) {
        return goal ? d + metric.distance(c, *goal) : d;
    };

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
    for (const Cell& s : sources) {
        const int idx = grid.index(s);
        r.dist[static_cast<std::size_t>(idx)] = 0.0;
        r.parents[static_cast<std::size_t>(idx)] = idx;
        queue.push({key_of(s, 0.0), 0.0, idx});
    }

    static constexpr int kDx[8] = {1, -1, 0, 0, 1, -1, 1, -1};
    static constexpr int kDy[8] = {0, 0, 1, -1, 1, 1, -1, -1};

    // Candidate scratch, reused across relaxations. Stamps give O(1) dedupe.
    const bool rich_candidates = options.backend == VisibilityBackend::exact;
    std::vector<int> cands;
    std::vector<double> cand_d;
    std::vector<int> pop_tangents;
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t epoch = 0;

    while (!queue.empty()) {
        const QueueEntry e = queue.top();
        queue.pop();
        const auto ei = static_cast<std::size_t>(e.idx);
        if (r.visited[ei]) continue;          // each cell settles at most once
        if (e.d > r.dist[ei]) continue;       // stale entry superseded by a better push
        r.visited[ei] = 1;
        ++r.popped_count;
        if (options.record_pop_keys) r.pop_keys.push_back(e.key);

        const Cell p = grid.cell(e.idx);
        if (goal && e.idx == goal_idx) {
            if (goal_reached) *goal_reached = true;
            break;
        }
        if (options.stop && options.stop(p)) break;

        const int g_idx = r.parents[ei];
        const Cell g = grid.cell(g_idx);

        // Tangent candidates around obstacles touching p: grazing rays from
        // the far side of an obstacle first emerge at cells just past it, so
        // the updated cells hugging p's obstacles are bend candidates for
        // every neighbor of p. (Exact backend only, like all enriched
        // candidate generation below: the exact backend is the optimality
        // reference, while the dp backend keeps the frugal local pool that
        // preserves the 2n score-store bound.)
        pop_tangents.clear();
        if (rich_candidates) {
            for (int j = 0; j < 8; ++j) {
                const Cell oc{p.x + kDx[j], p.y + kDy[j]};
                if (!grid.in_bounds(oc) || !grid.occupied(oc)) continue;
                for (int l = 0; l < 8; ++l) {
                    const Cell wc{oc.x + kDx[l], oc.y + kDy[l]};
                    if (!grid.in_bounds(wc) || grid.occupied(wc)) continue;
                    const int wi = grid.index(wc);
                    if (r.parents[static_cast<std::size_t>(wi)] >= 0) pop_tangents.push_back(wi);
                }
            }
        }

        for (int k = 0; k < 8; ++k) {
            const Cell nc{p.x + kDx[k], p.y + kDy[k]};
            if (!grid.in_bounds(nc)) continue;
            const bool occupied_n = grid.occupied(nc);
            if (occupied_n && !options.march_through_obstacles) continue;
            if (k >= 4 && options.no_corner_cut && grid.occupied(nc.x, p.y) &&
                grid.occupied(p.x, nc.y))
                continue;
            const auto n_idx = static_cast<std::size_t>(grid.index(nc));
            if (r.visited[n_idx]) continue;

            // Candidate parents gathered along the wavefront:
            //   - the main branch: p's parent g; when g is checked and
            //     cannot see n, p becomes a pivot and joins the pool,
            //   - parents of every already-updated cell around n,
            //   - where obstacles touch n, updated free cells hugging those
            //     obstacles (tangent bends: the cell a taut path pivots at
            //     when grazing an obstacle corner is adjacent to the
            //     obstacle, not necessarily to n, and may never fail a
            //     visibility query of its own),
            //   - every ancestor on those candidates' parent chains (taut
            //     chains through a channel share prefixes, so the optimal
            //     parent of n may sit higher up a neighbor's chain).
            ++epoch;
            cands.clear();
            const auto add_cand = [&](int cand) {
                const auto ci = static_cast<std::size_t>(cand);
                if (stamp[ci] == epoch) return;
                stamp[ci] = epoch;
                cands.push_back(cand);
            };
            add_cand(g_idx);
            for (const int t : pop_tangents) add_cand(t);
            for (int j = 0; j < 8; ++j) {
                const Cell qc{nc.x + kDx[j], nc.y + kDy[j]};
                if (!grid.in_bounds(qc)) continue;
                if (!grid.occupied(qc)) {
                    const int qp = r.parents[static_cast<std::size_t>(grid.index(qc))];
                    if (qp >= 0) add_cand(qp);
                    continue;
                }
                if (!rich_candidates) continue;
                for (int l = 0; l < 8; ++l) {
                    const Cell wc{qc.x + kDx[l], qc.y + kDy[l]};
                    if (!grid.in_bounds(wc) || grid.occupied(wc)) continue;
                    const int wi = grid.index(wc);
                    if (r.parents[static_cast<std::size_t>(wi)] >= 0) add_cand(wi);
                }
            }
            // Expand: every ancestor on a candidate's parent chain is a
            // candidate too (taut chains through a channel share prefixes,
            // so the optimal parent of n may sit higher up a neighbor's
            // chain), and candidate distances are filled in.
            std::size_t expanded = 0;
            const auto expand = [&] {
                if (rich_candidates) {
                    for (std::size_t i = expanded; i < cands.size(); ++i) {  // grows while walking
                        const int up = r.parents[static_cast<std::size_t>(cands[i])];
                        if (up >= 0 && up != cands[i]) add_cand(up);
                    }
                }
                cand_d.resize(cands.size());
                for (std::size_t i = expanded; i < cands.size(); ++i)
                    cand_d[i] = r.dist[static_cast<std::size_t>(cands[i])] +
                                metric.distance(grid.cell(cands[i]), nc);
                expanded = cands.size();
            };
            expand();

            // When a candidate turns out to be blocked, the taut bend that
            // replaces it lies on a tangent ray through a corner of some
            // obstacle in the corridor (retreating before the corner or
            // extending past it), or hugs such an obstacle directly.
            // Harvest: walk the blocked sight-line, then explore a bounded
            // queue of blockers; each contributes its updated surroundings
            // and the cells on corner rays cast from both endpoints, and
            // obstacles those rays run into join the queue.
            const auto harvest = [&](Cell from) {
                constexpr int kRetreat = 8;
                constexpr int kMaxBlockers = 12;
                int ring[kRetreat];
                int ring_n = 0;
                Cell blockq[kMaxBlockers];
                int bq_n = 0;
                const auto push_blocker = [&](Cell b) {
                    for (int i = 0; i < bq_n; ++i)
                        if (blockq[i] == b) return;
                    if (bq_n < kMaxBlockers) blockq[bq_n++] = b;
                };
                detail::walk_supercover(
                    from, nc,
                    [&](Cell q) {
                        if (grid.occupied(q)) {
                            push_blocker(q);
                            return false;
                        }
                        ring[ring_n++ % kRetreat] = grid.index(q);
                        return true;
                    },
                    [&](Cell s1, Cell s2) {
                        if (grid.occupied(s1) && grid.occupied(s2)) {
                            push_blocker(s1);
                            push_blocker(s2);
                            return false;
                        }
                        return true;
                    });
                for (int i = 0; i < std::min(ring_n, kRetreat); ++i) {
                    const int wi = ring[i];
                    if (r.parents[static_cast<std::size_t>(wi)] >= 0) add_cand(wi);
                }
                const std::int64_t budget =
                    std::abs(nc.x - from.x) + std::abs(nc.y - from.y) + 8;
                for (int b = 0; b < bq_n; ++b) {  // grows as rays hit more obstacles
                    for (int l = 0; l < 8; ++l) {
                        const Cell wc{blockq[b].x + kDx[l], blockq[b].y + kDy[l]};
                        if (!grid.in_bounds(wc) || grid.occupied(wc)) continue;
                        const int wi = grid.index(wc);
                        if (r.parents[static_cast<std::size_t>(wi)] >= 0) add_cand(wi);
                    }
                    // Rays through each blocker corner, cast from both ends:
                    // a bend is tangent-extreme along its incoming segment
                    // (candidate side) or its outgoing one (target side).
                    for (const Cell eye : {from, nc}) {
                        for (const int ox : {-1, 1}) {
                            for (const int oy : {-1, 1}) {
                                // corner of the blocker in doubled coordinates
                                const std::int64_t ddx = 2 * (blockq[b].x - eye.x) + ox;
                                const std::int64_t ddy = 2 * (blockq[b].y - eye.y) + oy;
                                std::int64_t steps = 0;
                                detail::walk_ray(
                                    grid, eye, ddx, ddy,
                                    [&](Cell w) {
                                        const int wi = grid.index(w);
                                        if (r.parents[static_cast<std::size_t>(wi)] >= 0)
                                            add_cand(wi);
                                        return ++steps < budget;
                                    },
                                    push_blocker);
                            }
                        }
                    }
                }
            };

            // Adjacency decides visibility from p to its own neighbor n in
            // closed form (no score-store traffic): orthogonal steps are
            // always clear; a diagonal step scores (free orthogonals)/2
            // under the dp recursion and is pinch-blocked exactly.
            const auto fallback_visible = [&] {
                if (k < 4) return true;
                const int occ = (grid.occupied(nc.x, p.y) ? 1 : 0) +
                                (grid.occupied(p.x, nc.y) ? 1 : 0);
                if (options.backend == VisibilityBackend::exact) return occ < 2;
                return (2 - occ) * 0.5 >= options.tau;
            };

            // Resolve conflicts: among visible candidates, keep the one with
            // the least overall distance (ties to the lowest parent index).
            // Checking in ascending order lets the first visible hit win and
            // skips visibility queries that cannot matter. When g fails its
            // check, p becomes a pivot and joins the pool.
            const double incumbent = r.dist[n_idx];
            int best = -1;
            double best_d = kInf;
            while (true) {
                int pick = -1;
                for (std::size_t i = 0; i < cands.size(); ++i) {
                    if (cands[i] < 0) continue;  // consumed
                    if (pick < 0 || cand_d[i] < cand_d[static_cast<std::size_t>(pick)] ||
                        (cand_d[i] == cand_d[static_cast<std::size_t>(pick)] &&
                         cands[i] < cands[static_cast<std::size_t>(pick)]))
                        pick = static_cast<int>(i);
                }
                const auto pi = static_cast<std::size_t>(pick);
                if (pick < 0 || !improves(cand_d[pi], incumbent)) break;
                const int cand = cands[pi];
                cands[pi] = -1;
                bool vis;
                if (cand == e.idx) {
                    vis = fallback_visible();
                } else {
                    vis = visible(r.store, grid, options.backend, grid.cell(cand), nc,
                                  occupied_n);
                    if (!vis && cand == g_idx) {
                        // the else branch of the expansion rule
                        if (!r.pivot_mask[ei]) {
                            r.pivot_mask[ei] = 1;
                            r.pivots.push_back(p);
                        }
                        add_cand(e.idx);
                        expand();
                    }
                }
                if (vis) {
                    best = cand;
                    best_d = cand_d[pi];
                    break;
                }
                if (rich_candidates && cand != e.idx) {
                    harvest(grid.cell(cand));
                    expand();
                }
            }

            if (best >= 0) {
                r.dist[n_idx] = best_d;
                r.parents[n_idx] = best;
                // a cell adopted as a parent re-roots the distance function
                const auto bi = static_cast<std::size_t>(best);
                if (r.parents[bi] != best && !r.pivot_mask[bi]) {
                    r.pivot_mask[bi] = 1;
                    r.pivots.push_back(grid.cell(best));
                }
                if (!occupied_n) queue.push({key_of(nc, best_d), best_d, static_cast<int>(n_idx)});
            }
        }
    }
    return r;
}

}  // namespace detail

MarchResult march(const OccupancyGrid& grid, const std::vector<Cell>& sources,
                  const MarchOptions& options) {
    return detail::run_wavefront(grid, sources, options, nullptr, nullptr);
}

std::optional<Path> extract_path(const MarchResult& result, Cell goal) {
    if (!result.in_bounds(goal)) throw std::invalid_argument("extract_path: goal out of bounds");
    int idx = result.index(goal);
    if (result.parents[static_cast<std::size_t>(idx)] < 0) return std::nullopt;

    Path path;
    path.length = result.dist[static_cast<std::size_t>(idx)];
    std::size_t guard = result.dist.size() + 1;
    while (true) {
        path.waypoints.push_back(result.cell(idx));
        const int parent = result.parents[static_cast<std::size_t>(idx)];
        if (parent == idx) break;  // sources are their own parents
        idx = parent;
        if (--guard == 0) throw std::logic_error("extract_path: parent chain does not terminate");
    }
    std::reverse(path.waypoints.begin(), path.waypoints.end());
    return path;
}

}  // namespace vbm

#include "bbqec/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bbqec::route {

namespace {

// Neighbor order fixed for deterministic BFS: up, down, left, right.
std::array<GridPos, 4> neighbors(GridPos p) {
    return {GridPos{p.row - 1, p.col}, GridPos{p.row + 1, p.col}, GridPos{p.row, p.col - 1},
            GridPos{p.row, p.col + 1}};
}

// BFS over free ancilla vertices from any vertex in `starts` to any in
// `goals`. Returns the path (start..goal) or empty.
std::vector<int> bfs_path(const GridGraph& grid, const std::vector<int>& starts,
                          const std::vector<int>& goals, const std::vector<uint8_t>& occupied) {
    const int nv = grid.width * grid.height;
    std::vector<int> prev(nv, -2);
    std::vector<uint8_t> is_goal(nv, 0);
    for (int g : goals) is_goal[g] = 1;
    std::queue<int> q;
    for (int s : starts) {
        if (occupied[s] || prev[s] != -2) continue;
        prev[s] = -1;
        if (is_goal[s]) {
            return {s};
        }
        q.push(s);
    }
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const GridPos np : neighbors(grid.pos(v))) {
            if (!grid.in_bounds(np)) continue;
            const int u = grid.vertex(np);
            if (occupied[u] || prev[u] != -2) continue;
            prev[u] = v;
            if (is_goal[u]) {
                std::vector<int> path;
                for (int w = u; w != -1; w = prev[w]) path.push_back(w);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(u);
        }
    }
    return {};
}

std::vector<int> free_neighbors(const GridGraph& grid, int v, const std::vector<uint8_t>& occ) {
    std::vector<int> out;
    for (const GridPos np : neighbors(grid.pos(v))) {
        if (!grid.in_bounds(np)) continue;
        const int u = grid.vertex(np);
        if (!occ[u]) out.push_back(u);
    }
    return out;
}

}  // namespace

RoutingPlan RoutingPlan::from_counts(int s_short, int s_long) {
    RoutingPlan plan;
    plan.steps_short = s_short;
    plan.steps_long = s_long;
    plan.hand_counts_only = true;
    return plan;
}

std::vector<RoutingStep> greedy_route(const std::vector<OperatorJob>& ops, const GridGraph& grid,
                                      bool purified) {
    const int nv = grid.width * grid.height;
    struct OpState {
        const OperatorJob* job;
        std::vector<uint8_t> routed;
        int done = 0;
        bool complete() const { return done == int(routed.size()); }
    };
    std::vector<OpState> state;
    state.reserve(ops.size());
    int remaining = 0;
    for (const auto& op : ops) {
        OpState s;
        s.job = &op;
        s.routed.assign(op.qubit_pos.size(), 0);
        if (op.qubit_pos.empty()) continue;  // nothing to route
        state.push_back(std::move(s));
        remaining++;
    }

    std::vector<RoutingStep> steps;
    std::vector<int> order(state.size());
    for (std::size_t i = 0; i < order.size(); i++) order[i] = int(i);

    while (remaining > 0) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return state[a].done > state[b].done;
        });
        RoutingStep step;
        std::vector<uint8_t> occ(nv, 0);
        bool progress = false;
        for (int oi : order) {
            OpState& st = state[oi];
            if (st.complete()) continue;
            for (std::size_t qi = 0; qi < st.routed.size(); qi++) {
                if (st.routed[qi]) continue;
                const int start = grid.vertex(st.job->qubit_pos[qi]);
                const int goal = grid.vertex(st.job->check);
                if (occ[start] || occ[goal]) continue;
                auto path = bfs_path(grid, {start}, {goal}, occ);
                if (path.empty()) continue;
                for (int v : path) occ[v] = 1;
                std::vector<int> donor;
                if (purified) {
                    const auto dstarts = free_neighbors(grid, path.front(), occ);
                    const auto dgoals = free_neighbors(grid, path.back(), occ);
                    if (!dstarts.empty() && !dgoals.empty())
                        donor = bfs_path(grid, dstarts, dgoals, occ);
                    if (donor.empty()) {
                        for (int v : path) occ[v] = 0;  // roll back the source path
                        continue;
                    }
                    for (int v : donor) occ[v] = 1;
                }
                RoutedConnection conn;
                conn.op_id = st.job->op_id;
                conn.qubit_id = st.job->qubit_ids[qi];
                conn.path = std::move(path);
                conn.donor_path = std::move(donor);
                step.connections.push_back(std::move(conn));
                st.routed[qi] = 1;
                st.done++;
                progress = true;
                break;  // readout ancilla now occupied; next qubit waits
            }
            if (st.complete()) {
                step.completed_ops.push_back(st.job->op_id);
                remaining--;
            }
        }
        if (!progress) throw std::runtime_error("greedy_route: no routable qubit (disconnected?)");
        steps.push_back(std::move(step));
    }
    return steps;
}

LowerBoundCertificate lower_bound(const std::vector<OperatorJob>& ops, const GridGraph& grid) {
    LowerBoundCertificate cert;
    cert.available_edges_per_step = grid.ancilla_edges();
    const double m_dim = double(std::max(grid.width, grid.height));
    double gamma_sum = 0.0;
    int gamma_count = 0;
    for (const auto& op : ops) {
        std::vector<GridPos> pts = op.qubit_pos;
        pts.push_back(op.check);
        int diam = 0;
        for (std::size_t a = 0; a < pts.size(); a++)
            for (std::size_t b = a + 1; b < pts.size(); b++)
                diam = std::max(diam, std::abs(pts[a].row - pts[b].row) +
                                          std::abs(pts[a].col - pts[b].col));
        cert.total_required_edges += diam;
        if (diam > 0) {
            gamma_sum += std::log(double(diam)) / std::log(m_dim);
            gamma_count++;
        }
    }
    cert.bound_steps = int((cert.total_required_edges + cert.available_edges_per_step - 1) /
                           cert.available_edges_per_step);
    if (cert.total_required_edges > 0 && cert.bound_steps < 1) cert.bound_steps = 1;
    cert.beta = ops.empty() ? 0.0 : std::log(double(ops.size())) / (2.0 * std::log(m_dim));
    cert.mean_gamma = gamma_count ? gamma_sum / gamma_count : 0.0;
    return cert;
}

double savings(int steps_short, int steps_long, double t_m) {
    if (steps_short < 1 || steps_long < 1) throw std::invalid_argument("savings: s, l >= 1");
    const double s = steps_short, l = steps_long;
    if (std::isinf(t_m)) return l / (s + l);
    if (t_m < 1) throw std::invalid_argument("savings: t_m >= 1");
    return 1.0 - ((t_m - 1.0) * 2.0 * s + 2.0 * (s + l)) / (t_m * 2.0 * (s + l));
}

std::string format_schedule(const std::vector<RoutingStep>& steps) {
    std::ostringstream out;
    for (std::size_t k = 0; k < steps.size(); k++) {
        out << "STEP " << k << "\n";
        for (const auto& c : steps[k].connections) {
            out << "PATH " << c.op_id << " " << c.qubit_id;
            for (int v : c.path) out << " " << v;
            out << "\n";
            if (!c.donor_path.empty()) {
                out << "PATH " << c.op_id << " " << c.qubit_id;
                for (int v : c.donor_path) out << " " << v;
                out << "\n";
            }
        }
    }
    return out.str();
}

std::vector<RoutingStep> load_manual_schedule(const std::string& text,
                                              const std::vector<OperatorJob>& ops,
                                              const GridGraph& grid, bool purified) {
    // (op_id, qubit_id) -> endpoints
    struct Want {
        int start, goal;
        int seen_source = 0, seen_donor = 0, step = -1;
    };
    std::map<std::pair<int, int>, Want> want;
    for (const auto& op : ops)
        for (std::size_t qi = 0; qi < op.qubit_ids.size(); qi++)
            want[{op.op_id, op.qubit_ids[qi]}] =
                Want{grid.vertex(op.qubit_pos[qi]), grid.vertex(op.check)};

    auto fail = [](int step, const std::string& why) {
        throw std::invalid_argument("schedule step " + std::to_string(step) + ": " + why);
    };

    std::vector<RoutingStep> steps;
    std::vector<uint8_t> occ;
    int cur = -1;
    std::istringstream in(text);
    std::string line;
    auto adjacent = [&](int a, int b) {
        const GridPos pa = grid.pos(a), pb = grid.pos(b);
        return std::abs(pa.row - pb.row) + std::abs(pa.col - pb.col) == 1;
    };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        if (kind == "STEP") {
            int k;
            ls >> k;
            if (k != int(steps.size())) fail(k, "steps must be numbered consecutively");
            steps.emplace_back();
            occ.assign(grid.width * grid.height, 0);
            cur = k;
            continue;
        }
        if (kind != "PATH") throw std::invalid_argument("unknown schedule line: " + line);
        if (cur < 0) throw std::invalid_argument("PATH before any STEP");
        int op_id, qubit_id;
        ls >> op_id >> qubit_id;
        std::vector<int> path;
        int v;
        while (ls >> v) path.push_back(v);
        if (path.empty()) fail(cur, "empty path");
        for (int u : path)
            if (u < 0 || u >= grid.width * grid.height) fail(cur, "vertex out of range");
        for (std::size_t i = 0; i + 1 < path.size(); i++)
            if (!adjacent(path[i], path[i + 1])) fail(cur, "path not contiguous");
        for (int u : path) {
            if (occ[u])
                fail(cur, "two paths share vertex " + std::to_string(u));
            occ[u] = 1;
        }
        auto it = want.find({op_id, qubit_id});
        if (it == want.end()) fail(cur, "unknown (op, qubit) pair");
        Want& w = it->second;
        if (w.step >= 0 && w.step != cur) fail(cur, "connection split across steps");
        w.step = cur;
        const bool exact = path.front() == w.start && path.back() == w.goal;
        if (exact) {
            w.seen_source++;
        } else if (purified && (adjacent(path.front(), w.start) || adjacent(path.front(), w.goal)) &&
                   (adjacent(path.back(), w.goal) || adjacent(path.back(), w.start))) {
            w.seen_donor++;
        } else {
            fail(cur, "path endpoints do not match the connection");
        }
        RoutedConnection conn;
        conn.op_id = op_id;
        conn.qubit_id = qubit_id;
        conn.path = std::move(path);
        if (exact)
            steps[cur].connections.push_back(std::move(conn));
        else
            steps[cur].connections.back().donor_path = conn.path;
    }
    for (const auto& [key, w] : want) {
        if (w.seen_source != 1 || (purified && w.seen_donor != 1))
            throw std::invalid_argument("unrouted or duplicated connection for op " +
                                        std::to_string(key.first) + " qubit " +
                                        std::to_string(key.second));
    }
    // completed op bookkeeping: every op completes at the latest step any of
    // its connections appears in
    std::map<int, int> last_step;
    for (const auto& [key, w] : want) last_step[key.first] = std::max(last_step[key.first], w.step);
    for (const auto& [op, st] : last_step) steps[st].completed_ops.push_back(op);
    return steps;
}

std::vector<OperatorJob> far_coupling_jobs(const layout::Placement& p,
                                           const layout::GeneratorClassification& cls,
                                           bool x_type, bool long_range) {
    const auto& sups = x_type ? p.x_supports : p.z_supports;
    const auto& longs = x_type ? cls.x_long : cls.z_long;
    std::vector<OperatorJob> jobs;
    for (std::size_t i = 0; i < sups.size(); i++) {
        if (longs[i] != long_range) continue;
        OperatorJob job;
        job.op_id = int(i);
        job.check = sups[i].site;
        for (std::size_t qi = 4; qi < 6; qi++) {  // the two distant qubits
            job.qubit_ids.push_back(sups[i].qubits[qi]);
            job.qubit_pos.push_back(sups[i].qubit_pos[qi]);
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

std::vector<OperatorJob> full_support_jobs(const layout::Placement& p, bool x_type) {
    const auto& sups = x_type ? p.x_supports : p.z_supports;
    std::vector<OperatorJob> jobs;
    for (std::size_t i = 0; i < sups.size(); i++) {
        OperatorJob job;
        job.op_id = int(i);
        job.check = sups[i].site;
        job.qubit_ids = sups[i].qubits;
        job.qubit_pos = sups[i].qubit_pos;
        jobs.push_back(std::move(job));
    }
    return jobs;
}

}  // namespace bbqec::route

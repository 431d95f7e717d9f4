#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbqec/layout.hpp"

namespace bbqec::route {

using layout::GridPos;

// Bilayer grid: data layer plus one routing-ancilla vertex per data-layer
// vertex. Teleportation paths live in the ancilla layer; the inter-layer
// edges implement the final CNOTs and are not part of the edge budget.
struct GridGraph {
    int width = 0;
    int height = 0;
    int vertex(GridPos p) const { return p.row * width + p.col; }
    GridPos pos(int v) const { return {v / width, v % width}; }
    bool in_bounds(GridPos p) const {
        return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width;
    }
    int ancilla_edges() const { return height * (width - 1) + width * (height - 1); }
};

// One routed teleportation connection: a qubit-to-check source path, plus a
// parallel donor path when purification is requested.
struct RoutedConnection {
    int op_id = 0;
    int qubit_id = 0;
    std::vector<int> path;        // ancilla-layer vertices, qubit end first
    std::vector<int> donor_path;  // empty when not purified
};

struct RoutingStep {
    std::vector<RoutedConnection> connections;
    std::vector<int> completed_ops;  // measured at the end of this step
};

struct RoutingPlan {
    std::vector<RoutingStep> steps;
    int steps_short = 0;
    int steps_long = 0;
    bool purified = false;
    bool hand_counts_only = false;  // plan carries step counts but no paths
    int total_steps() const { return steps_short + steps_long; }
    int physical_depth() const { return 11 * total_steps(); }

    static RoutingPlan from_counts(int s_short, int s_long);
};

// A Pauli operator to measure: its routed qubits and readout check site.
struct OperatorJob {
    int op_id = 0;
    GridPos check;
    std::vector<int> qubit_ids;
    std::vector<GridPos> qubit_pos;
};

// Greedy routing: per iteration, operators sorted by completed-qubit count
// descending, BFS paths committed when vertex-disjoint with this step's.
// With `purified` every connection also needs a parallel donor path.
std::vector<RoutingStep> greedy_route(const std::vector<OperatorJob>& ops, const GridGraph& grid,
                                      bool purified = false);

struct LowerBoundCertificate {
    long long total_required_edges = 0;
    int available_edges_per_step = 0;
    int bound_steps = 0;
    double beta = 0.0;
    double mean_gamma = 0.0;
};

// Sum over operators of the max pairwise Manhattan distance within the
// operator's placed footprint, divided by the per-step edge budget.
LowerBoundCertificate lower_bound(const std::vector<OperatorJob>& ops, const GridGraph& grid);

// Relative circuit-depth saving of measuring long-range generators every
// t_m rounds: 1 - [(t_m-1)*2s + 2(s+l)] / [t_m*2(s+l)]. Pass t_m = +inf for
// the l/(s+l) limit.
double savings(int steps_short, int steps_long, double t_m);

// Parse and validate `STEP k` / `PATH op qubit v0 v1 ...` schedule text.
// Throws std::invalid_argument naming the violated step.
std::vector<RoutingStep> load_manual_schedule(const std::string& text,
                                              const std::vector<OperatorJob>& ops,
                                              const GridGraph& grid, bool purified);

std::string format_schedule(const std::vector<RoutingStep>& steps);

// Build routing jobs for the distant couplings of one check type.
// `long_range` selects the long (masked) generators, otherwise the short
// ones. Each job routes the check's two far qubits.
std::vector<OperatorJob> far_coupling_jobs(const layout::Placement& p,
                                           const layout::GeneratorClassification& cls,
                                           bool x_type, bool long_range);

// Jobs covering the full 6-qubit support of every check of one type.
std::vector<OperatorJob> full_support_jobs(const layout::Placement& p, bool x_type);

}  // namespace bbqec::route

// oracle.hpp — exhaustive ground truth for per-task solution-cell counts.
//
// A behavior cell counts as solvable when some command on a regular probe
// lattice (probes_per_cell_axis points per axis per cell, cell-centered)
// reaches fitness f_max - 1e-9. The count is the ceiling any search
// algorithm can reach for that task at this probe resolution, so archives
// can be audited against it.
#pragma once

#include <cstddef>

#include "mtmb/domain.hpp"
#include "mtmb/planted_disks.hpp"

namespace mtmb {

/// Refusal threshold for the probe lattice; enumeration stops being a
/// reasonable idea long before memory does.
inline constexpr std::size_t kOracleProbeCap = 100'000'000;

/// Count solvable behavior cells for one task. Dispatches to an exact
/// product decomposition for planted-disks dual tasks (the naive lattice is
/// quartic in the axis resolution there); the result always equals the
/// plain lattice scan. Throws ConfigError when the probe lattice would
/// exceed probe_cap.
std::size_t oracle_count_solution_cells(const TaskDomain& domain, TaskId task,
                                        int probes_per_cell_axis,
                                        std::size_t probe_cap = kOracleProbeCap);

/// The unconditional Cartesian lattice scan over the task's active
/// dimensions (inactive dimensions pinned at the bounds midpoint). Exposed
/// so tests can confirm the specialized paths reproduce it exactly.
std::size_t oracle_count_by_scan(const TaskDomain& domain, TaskId task,
                                 int probes_per_cell_axis,
                                 std::size_t probe_cap = kOracleProbeCap);

/// Analytic count for planted-disks single-group tasks: a cell counts iff
/// its closed square intersects a closed planted disk.
std::size_t planted_disks_closed_form_single(const PlantedDisksDomain& domain, TaskId task);

/// Probe count and analytic count side by side for one single-group
/// planted-disks task. The two agree whenever every disk/cell intersection
/// is wide enough for the lattice to see; a disk grazing a cell thinner
/// than the probe spacing shows up as probe_count < closed_form. Audits run
/// this over whole domains to certify an instance sliver-free.
struct OracleSingleAudit {
    std::size_t probe_count = 0;
    std::size_t closed_form = 0;
    bool agrees() const { return probe_count == closed_form; }
};

OracleSingleAudit oracle_audit_single(const PlantedDisksDomain& domain, TaskId task,
                                      int probes_per_cell_axis,
                                      std::size_t probe_cap = kOracleProbeCap);

} // namespace mtmb

#ifndef CBP_DYNAMICS_HPP
#define CBP_DYNAMICS_HPP

#include "cbp/model.hpp"

#include <cstdint>
#include <vector>

namespace cbp {

/// Moving one item from its bin onto the top of another. The deviation is
/// "valid" when the destination bin is feasible before the move.
struct Deviation {
    ItemId item = 0;
    int from_bin = -1;
    int to_bin = -1;
    bool valid = false;
};

/// All strict-improvement moves available in the profile, in (item id, target
/// bin) order. Moves onto empty bins are reported once, for the lowest empty
/// bin index; the others are identical up to renumbering.
std::vector<Deviation> enumerate_improving_deviations(const Profile& profile,
                                                      const GameInstance& game);

bool has_improving_deviation(const Profile& profile, const GameInstance& game);
bool is_nash(const Profile& profile, const GameInstance& game);

/// Removes the item from its bin (closing the gap) and appends it to the top
/// of the target. The result may be infeasible even when the input profile is
/// feasible; capacity violations are rejected.
Profile apply_deviation(const Profile& profile, const Deviation& dev, const GameInstance& game);

using Potential = BigInt;

/// Sum of |B|^|B| over feasible open bins. Strictly increases along valid
/// improving deviations under the egalitarian cost function.
Potential potential_egalitarian(const Profile& profile, const GameInstance& game);

/// Sum of 3^(load * D) over feasible open bins, D the common denominator of
/// all sizes. Distinct load sums differ by at least 1/D, so the per-step
/// growth factor is at least 3 > 2; strictly increases along valid improving
/// deviations by positive-size movers under the proportional cost function.
Potential potential_proportional(const Profile& profile, const GameInstance& game);

/// The potential matching the instance's cost model.
Potential potential(const Profile& profile, const GameInstance& game);

enum class PolicyKind { First, Random, MaxGain };

struct Policy {
    PolicyKind kind = PolicyKind::First;
    std::uint64_t seed = 0;
};

Policy policy_from_name(const std::string& name, std::uint64_t seed);

struct DynamicsStep {
    Deviation deviation;
    Profile after;
    Potential potential;
};

struct DynamicsTrace {
    Profile initial;
    Potential initial_potential;
    std::vector<DynamicsStep> steps;
    Profile terminal;
    bool terminated = false;  // false only if the step cap was hit
};

/// Applies valid improving deviations, chosen per policy, until none is left.
/// The terminal profile of a terminated run is a Nash equilibrium.
DynamicsTrace run_valid_dynamics(const GameInstance& game, const Profile& initial,
                                 const Policy& policy, std::size_t max_steps = 100000);

enum class CycleSearchStatus { NoCycle, CycleFound, Inconclusive };

struct CycleSearchResult {
    CycleSearchStatus status = CycleSearchStatus::NoCycle;
    std::vector<Profile> cycle;  // closed walk, first state repeated at the end
    std::size_t states_explored = 0;
};

/// Depth-first search over the directed graph whose nodes are canonical
/// profiles and whose edges are improving deviations (all of them when
/// allow_nonvalid, valid ones otherwise). Returns a cycle reachable from the
/// start, certifies acyclicity of the reachable subgraph, or reports an
/// inconclusive result when the state cap is hit.
CycleSearchResult find_deviation_cycle(const GameInstance& game, const Profile& start,
                                       bool allow_nonvalid, std::size_t state_cap = 1000000);

/// Same search seeded from several starts, sharing the visited set; together
/// with an exhaustive start list this decides cycle existence globally.
CycleSearchResult find_deviation_cycle(const GameInstance& game,
                                       const std::vector<Profile>& starts, bool allow_nonvalid,
                                       std::size_t state_cap = 1000000);

}  // namespace cbp

#endif  // CBP_DYNAMICS_HPP

#ifndef CBP_INSTANCES_HPP
#define CBP_INSTANCES_HPP

#include "cbp/model.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace cbp {

/// A generated instance bundled with its named witness profiles and the
/// closed-form values they are expected to hit. Witnesses are machine-checked
/// at generation time: "sigma" must be a Nash equilibrium, "sigma_star" must
/// be feasible, and every expected F value must match the witness exactly;
/// generators refuse parameters for which a check fails.
struct GeneratedCase {
    GameInstance instance;
    std::map<std::string, Profile> witnesses;
    std::map<std::string, Rational> expected;
    std::map<std::string, long long> params;
    std::string provenance;
};

/// Three black and three white items of size 1/4 (kappa = 4): improving
/// deviations can cycle when non-valid ones are allowed.
GeneratedCase gen_improvement_cycle();

/// m >= 3 colors, egalitarian cost: h*k white items of size 1/k - h*delta
/// plus h(k-1)/(m-1) items of size delta per non-white color. A feasible
/// h-bin profile exists while every equilibrium needs at least
/// k(h - 1 - h/(m-1)) bins. Requires h >= 2, k a multiple of m and
/// (m-1) | h(k-1); delta = 1/(2hk(k+1)).
GeneratedCase gen_pos_multicolor_egalitarian(int m, int h, int k);

/// Three colors, proportional cost, n a multiple of 4: one big item of size
/// 1 - 1/n, n/2 - 1 items of size 1/n, and n/2 tiny items of size 2/n^2
/// split across the other two colors. The optimum uses two bins while every
/// equilibrium leaves at least n/2 - 5 of the size-1/n items in singletons.
GeneratedCase gen_pos_multicolor_proportional(int n);

/// Black and white, egalitarian: 2k whites of size 1/k - 2*delta, k/2 blacks
/// of size 1, 2k blacks of size delta, k whites of size 0 (k even,
/// delta = 1/(4k(k+1))). sigma uses 3k/2 + 1 bins, sigma_star k/2 + 2;
/// the ratio is 3 - 10/(k+4).
GeneratedCase gen_pos_bw_egalitarian(int k);

/// Proportional variant of the same family: sizes 1/k - 3*delta, 1 - 5k*delta
/// and delta with delta = 1/(2k(5k+3)); same bin counts and ratio.
GeneratedCase gen_pos_bw_proportional(int k);

/// Uniform size 1/k, k even: k^2/4 + k/2 whites and k^2/4 blacks. Every
/// equilibrium opens k bins while the optimum uses k/2 + 1.
GeneratedCase gen_pos_uniform_even(int k);

/// Three colors, uniform sizes: 2k items of color 1, k each of colors 2 and
/// 3, all of size 1/(4k) (or 1/(4k+1) with one extra color-1 item in the odd
/// variant). The optimum is a single bin; the equilibrium witness opens 2k.
GeneratedCase gen_poa_uniform_multicolor(int k, bool odd_variant);

/// Black and white, uniform size 1/k with k odd: (k^2+4k-1)/4 whites and
/// (k+1)^2/4 blacks. sigma opens (3k+1)/2 bins against an optimum of
/// (k+1)/2 + 1; the ratio is (3k+1)/(k+3) = 3 - 8/(k+3).
GeneratedCase gen_poa_bw_odd(int k);

enum class SizeFamily { Uniform, Grid, ZeroHeavy };

struct RandomSpec {
    int n = 4;
    int m = 2;
    SizeFamily family = SizeFamily::Grid;
    long long kappa = 2;     // Uniform: common size 1/kappa
    long long grid_denom = 8;  // Grid / ZeroHeavy: sizes are multiples of 1/D
    CostModel cost_model = CostModel::Egalitarian;
    std::uint64_t seed = 0;
};

/// Seeded, reproducible random instance; the same spec always yields the
/// same items.
GameInstance gen_random(const RandomSpec& spec);

/// Seeded random capacity-valid profile of an instance, for dynamics starts.
Profile random_profile(const GameInstance& game, std::uint64_t seed);

}  // namespace cbp

#endif  // CBP_INSTANCES_HPP

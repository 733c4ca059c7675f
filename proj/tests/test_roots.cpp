#include <doctest.h>

#include <algorithm>
#include <set>

#include "alg/roots.hpp"

using namespace alg;

namespace {

// index of a root in the canonical enumeration
std::size_t f4_index(F4Root a) {
  const auto& all = f4_roots();
  return std::find(all.begin(), all.end(), a) - all.begin();
}

// a Weyl word as a permutation of the 48 roots
std::array<int, 48> word_perm(const F4Word& w) {
  std::array<int, 48> p{};
  for (std::size_t i = 0; i < 48; ++i)
    p[i] = static_cast<int>(f4_index(word_apply(f4_roots()[i], w)));
  return p;
}

}  // namespace

TEST_CASE("F4 root enumeration") {
  const auto& all = f4_roots();
  CHECK(all.size() == 48);
  int longs = 0;
  for (F4Root a : all) {
    CHECK(f4_is_root(a));
    if (f4_is_long(a)) ++longs;
  }
  CHECK(longs == 24);
  // heights are nonzero, the list is sorted by (height, lex), simple roots
  // have height one
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    int h1 = f4_height(all[i]), h2 = f4_height(all[i + 1]);
    CHECK(h1 != 0);
    CHECK((h1 < h2 || (h1 == h2 && all[i] < all[i + 1])));
  }
  for (F4Root d : f4_simple()) CHECK(f4_height(d) == 1);
  // negation acts within the system
  for (F4Root a : all) CHECK(f4_is_root(-a));
  // reflections permute the system
  for (F4Root a : all)
    for (F4Root d : f4_simple()) CHECK(f4_is_root(f4_reflect(a, d)));
}

TEST_CASE("the projection pi") {
  CHECK(pi({-2, 0, 0, 0}) == G2Root{-2, -1});
  CHECK(pi({1, 1, -1, -1}) == G2Root{1, 0});
  CHECK(pi({0, 1, -1, 0}) == G2Root{0, 0});
  // image is exactly G2 union zero, and pi is onto every G2 root
  std::set<std::pair<int, int>> image;
  for (F4Root a : f4_roots()) {
    G2Root b = pi(a);
    CHECK((b.is_zero() || g2_is_root(b)));
    image.insert({b.i, b.j});
  }
  CHECK(image.size() == 13);
  // additive on root sums
  for (F4Root a : f4_roots())
    for (F4Root b : f4_roots())
      if (f4_is_root(a + b)) {
        G2Root s = pi(a) + pi(b);
        CHECK(pi(a + b) == s);
        CHECK((s.is_zero() || g2_is_root(s)));
      }
  // the pi-adapted standard system maps its positive half onto the matching
  // positive G2 roots plus zero
  CHECK(positive_system(f4_pi_system()).size() == 24);
  std::set<std::pair<int, int>> pos_image;
  for (F4Root a : positive_system(f4_pi_system())) pos_image.insert({pi(a).i, pi(a).j});
  std::set<std::pair<int, int>> expected{{0, 0}};
  for (G2Root b : positive_system(g2_pi_simple())) expected.insert({b.i, b.j});
  CHECK(pos_image == expected);
  CHECK(pi(f4_pi_system()[0]) == g2_pi_simple()[1]);
  CHECK(pi(f4_pi_system()[1]) == g2_pi_simple()[0]);
  CHECK(pi(f4_pi_system()[2]).is_zero());
  CHECK(pi(f4_pi_system()[3]).is_zero());
  // the enumeration system f4_simple() is standard but not pi-adapted: its
  // positive image contains a pair of opposite short roots
  std::set<std::pair<int, int>> delta_image;
  for (F4Root a : positive_system(f4_simple())) delta_image.insert({pi(a).i, pi(a).j});
  CHECK(delta_image.count({1, 1}));
  CHECK(delta_image.count({-1, -1}));
}

TEST_CASE("fibers of pi") {
  // long G2 roots have singleton long fibers
  for (G2Root b : g2_roots())
    if (g2_is_long(b)) {
      auto f = fiber(b);
      CHECK(f.size() == 1);
      CHECK(f4_is_long(f[0]));
    }
  CHECK(fiber({-2, -1}) == std::vector<F4Root>{{-2, 0, 0, 0}});
  // short G2 roots have C3-type fibers: three long roots with orthogonal
  // halves, and the three short roots are the pairwise half-sums
  for (G2Root b : g2_roots())
    if (!g2_is_long(b)) {
      auto f = fiber(b);
      CHECK(f.size() == 6);
      std::vector<F4Root> lng, sht;
      for (F4Root a : f) (f4_is_long(a) ? lng : sht).push_back(a);
      CHECK(lng.size() == 3);
      CHECK(sht.size() == 3);
      for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) CHECK(f4_dot(lng[s], lng[t]) == 0);
      std::set<std::array<int, 4>> half_sums, shorts;
      for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) {
          F4Root sum = lng[s] + lng[t];
          half_sums.insert({sum.p / 2, sum.i / 2, sum.j / 2, sum.l / 2});
        }
      for (F4Root a : sht) shorts.insert(a.coords());
      CHECK(half_sums == shorts);
    }
  // the zero fiber: six roots spanning <f3, f4> plus the zero vector
  auto f0 = fiber({0, 0});
  CHECK(f0.size() == 7);
  std::set<std::array<int, 4>> got;
  for (F4Root a : f0) got.insert(a.coords());
  F4Root f3 = f4_pi_system()[2], f4r = f4_pi_system()[3];
  std::set<std::array<int, 4>> want{{0, 0, 0, 0},
                                    f3.coords(),
                                    (-f3).coords(),
                                    f4r.coords(),
                                    (-f4r).coords(),
                                    (f3 + f4r).coords(),
                                    (-(f3 + f4r)).coords()};
  CHECK(got == want);
}

TEST_CASE("intervals and adjacency") {
  auto iv = root_interval(G2Root{1, 0}, G2Root{-2, -1});
  std::set<std::pair<int, int>> got;
  for (G2Root b : iv) got.insert({b.i, b.j});
  CHECK(got == std::set<std::pair<int, int>>{{-1, -1}, {0, -1}, {1, -1}, {-1, -2}});
  CHECK(is_adjacent(G2Root{1, 1}, G2Root{1, -1}));
  CHECK_FALSE(is_adjacent(G2Root{1, 0}, G2Root{-2, -1}));
  CHECK_THROWS_AS(root_interval(G2Root{1, 0}, G2Root{-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(root_interval(F4Root{2, 0, 0, 0}, F4Root{-2, 0, 0, 0}),
                  std::invalid_argument);
  CHECK(g2_cartan({1, 0}, {1, 0}) == 2);
  CHECK(f4_cartan({1, 1, 0, 0}, {1, 1, 0, 0}) == 2);
  // adjacent-root consequence: gamma + i alpha + j beta is never a root for
  // i, j >= 2 when alpha, beta are adjacent
  for (G2Root a : g2_roots())
    for (G2Root b : g2_roots()) {
      if (g2_proportional(a, b) || !is_adjacent(a, b)) continue;
      for (G2Root c : g2_roots())
        for (int i = 2; i <= 5; ++i)
          for (int j = 2; j <= 5; ++j) CHECK_FALSE(g2_is_root(c + i * a + j * b));
    }
  int f4_adjacent_pairs = 0;
  for (F4Root a : f4_roots())
    for (F4Root b : f4_roots()) {
      if (f4_proportional(a, b) || !is_adjacent(a, b)) continue;
      ++f4_adjacent_pairs;
      for (F4Root c : f4_roots())
        for (int i = 2; i <= 5; ++i)
          for (int j = 2; j <= 5; ++j) CHECK_FALSE(f4_is_root(c + i * a + j * b));
    }
  CHECK(f4_adjacent_pairs > 0);
}

TEST_CASE("the Weyl group embedding") {
  // long G2 reflections embed as the single reflection at the fiber root
  CHECK(weyl_embed_reflection({-2, -1}) == F4Word{{-2, 0, 0, 0}});
  // pi-equivariance for every G2 reflection on all 48 roots
  for (G2Root b : g2_roots()) {
    F4Word u = weyl_embed({b});
    for (F4Root a : f4_roots()) CHECK(pi(word_apply(a, u)) == g2_reflect(pi(a), b));
  }
  // the two simple embedded reflections generate a dihedral group of order 12
  F4Word u1 = weyl_embed({g2_simple()[0]}), u2 = weyl_embed({g2_simple()[1]});
  F4Word prod = u1;
  prod.insert(prod.end(), u2.begin(), u2.end());
  std::array<int, 48> idperm{};
  for (int i = 0; i < 48; ++i) idperm[i] = i;
  std::array<int, 48> p = word_perm(prod), q = p;
  int order = 1;
  while (q != idperm) {
    std::array<int, 48> next{};
    for (int i = 0; i < 48; ++i) next[i] = p[q[i]];
    q = next;
    ++order;
    REQUIRE(order <= 20);
  }
  CHECK(order == 6);
  // embedded reflections are involutions
  for (G2Root b : g2_roots()) {
    F4Word w = weyl_embed({b, b});
    for (F4Root a : f4_roots()) CHECK(word_apply(a, w) == a);
  }
}

TEST_CASE("fibers of non-proportional pairs fit in one positive system") {
  // generate W(F4) as permutations of the 48 roots
  std::vector<std::array<int, 48>> gens;
  for (F4Root d : f4_simple()) gens.push_back(word_perm({d}));
  std::set<std::array<int, 48>> seen;
  std::vector<std::array<int, 48>> queue;
  std::array<int, 48> id{};
  for (int i = 0; i < 48; ++i) id[i] = i;
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    auto w = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      std::array<int, 48> next{};
      for (int i = 0; i < 48; ++i) next[i] = g[w[i]];
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  CHECK(seen.size() == 1152);

  std::set<std::size_t> positive_idx;
  for (F4Root a : positive_system(f4_simple())) positive_idx.insert(f4_index(a));
  CHECK(positive_idx.size() == 24);

  for (G2Root a : g2_roots())
    for (G2Root b : g2_roots()) {
      if (g2_proportional(a, b)) continue;
      std::set<std::size_t> need;
      for (F4Root r : fiber(a))
        if (!r.is_zero()) need.insert(f4_index(r));
      for (F4Root r : fiber(b))
        if (!r.is_zero()) need.insert(f4_index(r));
      bool found = false;
      for (const auto& w : seen) {
        bool all = true;
        for (std::size_t idx : need)
          if (!positive_idx.count(w[idx])) {
            all = false;
            break;
          }
        if (all) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
}

TEST_CASE("coarsening subspace families along pi") {
  RingPtr R = Ring::rationals();
  // toy family: each root alpha gets the line through its canonical index
  std::map<F4Root, Subspace> sp;
  const auto& all = f4_roots();
  for (std::size_t i = 0; i < all.size(); ++i)
    sp.emplace(all[i], Subspace::span(R, 48, {vec_unit(R, 48, i)}));
  auto coarse = g2_grading_from_f4(sp);
  CHECK(coarse.size() == 13);  // the six zero-fiber roots coarsen to (0,0)
  CHECK(coarse.at({0, 0}).dim() == 6);
  for (G2Root b : g2_roots()) {
    auto it = coarse.find(b);
    REQUIRE(it != coarse.end());
    CHECK(it->second.dim() == (g2_is_long(b) ? 1 : 6));
    for (F4Root a : fiber(b))
      if (!a.is_zero())
        CHECK(it->second.contains(vec_unit(R, 48, f4_index(a))));
  }
  // singleton fibers pass through unchanged
  auto single = coarse.at({-2, -1});
  CHECK(single.dim() == 1);
  CHECK(single.contains(vec_unit(R, 48, f4_index({-2, 0, 0, 0}))));
}

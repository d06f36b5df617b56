// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "test_util.hpp"
#include "vexsort/detail/network.hpp"
#include "vexsort/vexsort.hpp"

using namespace vexsort;
using namespace vexsort::detail;
using vextest::Rng;

namespace {

// Applies a comparator list to a plain array (the 0-1 oracle path).
template <typename T, std::size_t N, std::size_t M>
void apply_network(std::array<T, N>& vals,
                   const std::array<std::pair<std::uint8_t, std::uint8_t>, M>& net) {
  for (const auto& [i, j] : net) {
    if (vals[j] < vals[i]) std::swap(vals[i], vals[j]);
  }
}

// Matrix harness: values addressed by (column, row); the buffer layout and
// block handling go through the real Network code.
template <class BE, class TR>
struct MatrixHarness {
  using Net = Network<BE, TR>;
  using Lane = typename TR::Lane;
  using O = typename BE::template Ops<Lane>;
  using Key = typename TR::Key;
  static constexpr std::size_t kLpk = TR::kLanesPerKey;

  std::size_t cols;
  std::size_t stride;
  std::size_t nb;
  std::vector<Lane> buf;

  explicit MatrixHarness(std::size_t c)
      : cols(c), stride(Net::row_lanes(c)), nb(stride / O::kLanes),
        buf(kNetworkRows * stride) {
    // Unused block lanes carry the padding value.
    const Key last = TR::last_value();
    for (std::size_t r = 0; r < kNetworkRows; ++r) {
      for (std::size_t i = 0; i < stride; i += kLpk) {
        TR::store_key(buf.data() + r * stride + i, last);
      }
    }
  }

  void set(std::size_t col, std::size_t row, Key k) {
    TR::store_key(buf.data() + row * stride + col * kLpk, k);
  }
  Key get(std::size_t col, std::size_t row) const {
    return TR::load_key(const_cast<Lane*>(buf.data()) + row * stride +
                        col * kLpk);
  }

  typename Net::Rows load_rows() const {
    typename Net::Rows rows;
    for (std::size_t r = 0; r < kNetworkRows; ++r) {
      for (std::size_t i = 0; i < nb; ++i) {
        rows[r].blk[i] = O::load(std::span<const Lane>(buf.data(), buf.size()),
                                 r * stride + i * O::kLanes);
      }
    }
    return rows;
  }

  void store_rows(const typename Net::Rows& rows) {
    for (std::size_t r = 0; r < kNetworkRows; ++r) {
      for (std::size_t i = 0; i < nb; ++i) {
        O::store(rows[r].blk[i], std::span<Lane>(buf.data(), buf.size()),
                 r * stride + i * O::kLanes);
      }
    }
  }

  // Keys of columns [first, first+width) in column-major order.
  std::vector<Key> column_major(std::size_t first, std::size_t width) const {
    std::vector<Key> out;
    for (std::size_t c = first; c < first + width; ++c) {
      for (std::size_t r = 0; r < kNetworkRows; ++r) out.push_back(get(c, r));
    }
    return out;
  }
};

using BoolHarness = MatrixHarness<ScalarTag, LaneKeyTraits<std::uint16_t, true>>;
using BoolHarnessWide = MatrixHarness<WideTag, LaneKeyTraits<std::uint16_t, true>>;

// Fill two adjacent sorted groups of `g` columns each with boolean keys
// (k0/k1 ones at the tail of each group's column-major order).
template <class H>
void fill_sorted_groups(H& h, std::size_t g, std::size_t k0, std::size_t k1) {
  const std::size_t m = kNetworkRows * g;
  for (std::size_t p = 0; p < m; ++p) {
    h.set(p / kNetworkRows, p % kNetworkRows, p >= m - k0 ? 1 : 0);
    h.set(g + p / kNetworkRows, p % kNetworkRows, p >= m - k1 ? 1 : 0);
  }
}

template <class H>
bool run_stage_and_check(H& h, std::size_t g) {
  auto rows = h.load_rows();
  // Execute only the steps of the merge stage for group size g.
  const auto schedule = make_merge_schedule(2 * g, 1);
  std::size_t start = 0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i].kind == MergeStep::Kind::kCross &&
        schedule[i].param == 2 * g) {
      start = i;
    }
  }
  for (std::size_t i = start; i < schedule.size(); ++i) {
    H::Net::run_merge_step(rows, schedule[i], h.nb);
  }
  h.store_rows(rows);
  const auto flat = h.column_major(0, 2 * g);
  return std::is_sorted(flat.begin(), flat.end());
}

template <typename T, class BE>
void check_base_case_all_sizes(bool ascending, Rng& rng) {
  using TF = TraitsFor<T>;
  using Lane = typename TF::Lane;
  SortScratch scratch = SortScratch::for_key<T>();
  std::span<Lane> scr(reinterpret_cast<Lane*>(scratch.data()),
                      scratch.size() / sizeof(Lane));
  for (std::size_t n = 0; n <= kBaseCaseKeys; ++n) {
    std::vector<T> keys = vextest::random_keys<T>(rng, n);
    // Every third size: low-entropy duplicates.
    if (n % 3 == 0) {
      for (auto& k : keys) {
        if constexpr (std::is_same_v<T, K128>) {
          k = K128{k.lo % 8, 0};
        } else {
          k = static_cast<T>(static_cast<std::int64_t>(
              std::bit_cast<UnsignedBits<T>>(k) % 8));
        }
      }
    }
    std::vector<T> expect = keys;
    vextest::reference_sort(expect, ascending);
    auto* lanes = reinterpret_cast<Lane*>(keys.data());
    if (ascending) {
      Network<BE, typename TF::template Traits<true>>::base_case(lanes, n, scr);
    } else {
      Network<BE, typename TF::template Traits<false>>::base_case(lanes, n, scr);
    }
    REQUIRE(keys.size() == expect.size());
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(vextest::bit_equal(keys[i], expect[i]));
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("network");

TEST_CASE("the 16-input column network sorts all 2^16 boolean inputs") {
  for (std::uint32_t pattern = 0; pattern < (1u << 16); ++pattern) {
    std::array<std::uint8_t, 16> vals{};
    for (std::size_t i = 0; i < 16; ++i) vals[i] = (pattern >> i) & 1;
    apply_network(vals, kGreen16);
    CHECK(std::is_sorted(vals.begin(), vals.end()));
  }
}

TEST_CASE("the 16-input network uses 60 modules") { CHECK(kGreen16.size() == 60); }

TEST_CASE("four-input odd-even network showcase sorts a 4x4 matrix") {
  // Five modules are optimal for four inputs; the same column-sort plus
  // bitonic merge structure as the production path, at showcase scale.
  constexpr std::array<std::pair<std::uint8_t, std::uint8_t>, 5> kOddEven4 = {
      {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {1, 2}}};
  for (std::uint32_t pattern = 0; pattern < (1u << 4); ++pattern) {
    std::array<std::uint8_t, 4> vals{};
    for (std::size_t i = 0; i < 4; ++i) vals[i] = (pattern >> i) & 1;
    apply_network(vals, kOddEven4);
    CHECK(std::is_sorted(vals.begin(), vals.end()));
  }

  Rng rng(77);
  for (int it = 0; it < 200; ++it) {
    // columns-of-4 sort, then scalar bitonic merges of column pairs
    std::array<std::array<int, 4>, 4> m{};  // m[col][row]
    std::vector<int> all;
    for (auto& col : m) {
      for (auto& v : col) {
        v = static_cast<int>(rng() % 50);
        all.push_back(v);
      }
    }
    for (auto& col : m) {
      apply_network(col, kOddEven4);
    }
    // Merge adjacent columns, then adjacent column pairs, scalar bitonic.
    const auto merge_flat = [](std::vector<int>& seq) {
      const std::size_t n = seq.size();
      for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        if (seq[j] < seq[i]) std::swap(seq[i], seq[j]);
      }
      for (std::size_t h = n / 4; h >= 1; h /= 2) {
        for (std::size_t i = 0; i < n - h; ++i) {
          if ((i & h) == 0 && seq[i + h] < seq[i]) std::swap(seq[i], seq[i + h]);
        }
      }
    };
    std::vector<int> g01(m[0].begin(), m[0].end());
    g01.insert(g01.end(), m[1].begin(), m[1].end());
    merge_flat(g01);
    std::vector<int> g23(m[2].begin(), m[2].end());
    g23.insert(g23.end(), m[3].begin(), m[3].end());
    merge_flat(g23);
    std::vector<int> whole = g01;
    whole.insert(whole.end(), g23.begin(), g23.end());
    merge_flat(whole);
    std::sort(all.begin(), all.end());
    CHECK(whole == all);
  }
}

TEST_CASE("merge schedule is a pure function of the shape") {
  // Data-independent op trace: same shape, same steps; more columns, more
  // steps. Stage g contributes 1 cross + log2(g) intra + 4 row steps.
  CHECK(make_merge_schedule(1, 1).empty());
  CHECK(make_merge_schedule(2, 1).size() == 5);
  CHECK(make_merge_schedule(4, 1).size() == 11);
  CHECK(make_merge_schedule(8, 1).size() == 18);
  CHECK(make_merge_schedule(16, 1).size() == 26);
  CHECK(make_merge_schedule(16, 1) == make_merge_schedule(16, 1));
  CHECK(make_merge_schedule(16, 2) != make_merge_schedule(16, 1));
  // Sizes in one column bucket share a schedule.
  CHECK(columns_for(129) == columns_for(256));
  CHECK(columns_for(17) == columns_for(32));
  CHECK(columns_for(0) == 1);
  CHECK(columns_for(16) == 1);
  CHECK(columns_for(17) == 2);
  CHECK(columns_for(256) == 16);
}

TEST_CASE("merge stages pass exhaustive sorted-boolean tests") {
  for (const std::size_t g : {std::size_t{1}, std::size_t{2}, std::size_t{4},
                              std::size_t{8}}) {
    const std::size_t m = kNetworkRows * g;
    for (std::size_t k0 = 0; k0 <= m; ++k0) {
      for (std::size_t k1 = 0; k1 <= m; ++k1) {
        BoolHarness h(2 * g);
        fill_sorted_groups(h, g, k0, k1);
        if (!run_stage_and_check(h, g)) {
          FAIL("stage g=", g, " failed at k0=", k0, " k1=", k1);
        }
      }
    }
  }
}

TEST_CASE("merge stages pass boolean tests on the wide backend") {
  // Same sweep, coarser sampling, through the wide block paths.
  Rng rng(123);
  for (const std::size_t g : {std::size_t{1}, std::size_t{2}, std::size_t{4},
                              std::size_t{8}}) {
    const std::size_t m = kNetworkRows * g;
    for (int it = 0; it < 800; ++it) {
      const std::size_t k0 = rng() % (m + 1);
      const std::size_t k1 = rng() % (m + 1);
      BoolHarnessWide h(2 * g);
      fill_sorted_groups(h, g, k0, k1);
      if (!run_stage_and_check(h, g)) {
        FAIL("wide stage g=", g, " failed at k0=", k0, " k1=", k1);
      }
    }
  }
}

TEST_CASE("column sort: every lane column is sorted; equal rows are fixed") {
  using TR = LaneKeyTraits<std::uint32_t, true>;
  using H = MatrixHarness<WideTag, TR>;
  Rng rng(9);
  for (int it = 0; it < 300; ++it) {
    H h(16);
    std::array<std::array<std::uint32_t, 16>, 16> vals{};  // [col][row]
    for (std::size_t c = 0; c < 16; ++c) {
      for (std::size_t r = 0; r < 16; ++r) {
        vals[c][r] = static_cast<std::uint32_t>(rng());
        h.set(c, r, vals[c][r]);
      }
    }
    auto rows = h.load_rows();
    H::Net::sort_16_rows(rows, h.nb);
    h.store_rows(rows);
    for (std::size_t c = 0; c < 16; ++c) {
      std::array<std::uint32_t, 16> col{};
      for (std::size_t r = 0; r < 16; ++r) col[r] = h.get(c, r);
      std::sort(vals[c].begin(), vals[c].end());
      CHECK(col == vals[c]);
    }
  }

  // All rows equal: fixed point.
  H h(16);
  for (std::size_t c = 0; c < 16; ++c) {
    for (std::size_t r = 0; r < 16; ++r) h.set(c, r, 7u * (std::uint32_t)c);
  }
  auto rows = h.load_rows();
  H::Net::sort_16_rows(rows, h.nb);
  h.store_rows(rows);
  for (std::size_t c = 0; c < 16; ++c) {
    for (std::size_t r = 0; r < 16; ++r) CHECK(h.get(c, r) == 7u * c);
  }
}

TEST_CASE("merging two sorted columns equals a scalar two-way merge") {
  using TR = LaneKeyTraits<std::uint32_t, true>;
  using H = MatrixHarness<ScalarTag, TR>;
  Rng rng(13);
  for (int it = 0; it < 300; ++it) {
    std::array<std::uint32_t, 16> a{};
    std::array<std::uint32_t, 16> b{};
    for (auto& v : a) v = rng() % 1000;
    for (auto& v : b) v = 1000 - rng() % 1000;  // reversed-range contents
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    H h(2);
    for (std::size_t r = 0; r < 16; ++r) {
      h.set(0, r, a[r]);
      h.set(1, r, b[r]);
    }
    auto rows = h.load_rows();
    H::Net::merge_sorted_columns(rows, 2, h.nb);
    h.store_rows(rows);
    std::vector<std::uint32_t> expect;
    std::merge(a.begin(), a.end(), b.begin(), b.end(),
               std::back_inserter(expect));
    const auto got = h.column_major(0, 2);
    CHECK(std::equal(expect.begin(), expect.end(), got.begin()));
  }
}

TEST_CASE("base_case small examples") {
  SortScratch scratch = SortScratch::for_key<std::uint32_t>();
  std::span<std::uint32_t> scr(
      reinterpret_cast<std::uint32_t*>(scratch.data()),
      scratch.size() / sizeof(std::uint32_t));
  using Net = Network<WideTag, LaneKeyTraits<std::uint32_t, true>>;

  std::vector<std::uint32_t> empty;
  Net::base_case(empty.data(), 0, scr);

  std::vector<std::uint32_t> one{42};
  Net::base_case(one.data(), 1, scr);
  CHECK(one[0] == 42);

  std::vector<std::uint32_t> five{3, 1, 2, 5, 4};
  Net::base_case(five.data(), 5, scr);
  CHECK(five == std::vector<std::uint32_t>{1, 2, 3, 4, 5});
}

TEST_CASE("base_case matches a reference sort for every size up to 256") {
  Rng rng(1234);
  check_base_case_all_sizes<std::uint16_t, ScalarTag>(true, rng);
  check_base_case_all_sizes<std::uint16_t, WideTag>(true, rng);
  check_base_case_all_sizes<std::int32_t, WideTag>(false, rng);
  check_base_case_all_sizes<float, WideTag>(true, rng);
  check_base_case_all_sizes<std::uint64_t, ScalarTag>(false, rng);
  check_base_case_all_sizes<std::uint64_t, WideTag>(true, rng);
  check_base_case_all_sizes<double, WideTag>(false, rng);
  check_base_case_all_sizes<K128, ScalarTag>(true, rng);
  check_base_case_all_sizes<K128, WideTag>(false, rng);
  check_base_case_all_sizes<std::int16_t, WideTag>(true, rng);
}

TEST_SUITE_END();

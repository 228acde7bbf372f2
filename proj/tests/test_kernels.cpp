#include <random>
#include <vector>

#include "doctest.h"
#include "evenloop/bitvec.hpp"
#include "evenloop/kernels.hpp"

using namespace evenloop;
using kernels::Word;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<Word> w(n);
  for (auto& x : w) x = rng();
  return w;
}

void check_table(const kernels::KernelTable& t) {
  std::mt19937_64 rng(42);
  for (std::size_t n : {0, 1, 3, 4, 5, 8, 17, 33}) {
    auto a = random_words(rng, n);
    auto b = random_words(rng, n);
    std::size_t pop = 0, andpop = 0;
    bool any = false, subset = true;
    std::vector<Word> x(n), o(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = a[i] ^ b[i];
      o[i] = a[i] | b[i];
      d[i] = a[i] & b[i];
      pop += static_cast<std::size_t>(__builtin_popcountll(a[i]));
      andpop += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
      any = any || a[i] != 0;
      subset = subset && (d[i] & ~o[i]) == 0;
    }
    auto t1 = a;
    t.xor_into(t1.data(), b.data(), n);
    CHECK(t1 == x);
    auto t2 = a;
    t.or_into(t2.data(), b.data(), n);
    CHECK(t2 == o);
    auto t3 = a;
    t.and_into(t3.data(), b.data(), n);
    CHECK(t3 == d);
    CHECK(t.popcount(a.data(), n) == pop);
    CHECK(t.and_popcount(a.data(), b.data(), n) == andpop);
    CHECK(t.any(a.data(), n) == any);
    CHECK(t.is_subset(d.data(), o.data(), n));
    if (n > 0 && a != d) CHECK_FALSE(t.is_subset(a.data(), d.data(), n));
    std::vector<Word> zero(n, 0);
    CHECK_FALSE(t.any(zero.data(), n));
  }
}

}  // namespace

TEST_CASE("kernel scalar table matches word loops") { check_table(kernels::scalar_table()); }

TEST_CASE("kernel avx2 table matches scalar") {
  const auto* t = kernels::avx2_table();
  if (t == nullptr || !kernels::cpu_supports_avx2()) return;
  check_table(*t);
}

TEST_CASE("kernel active table has a name") { CHECK_FALSE(kernels::active().name.empty()); }

TEST_CASE("bitvector basic ops") {
  BitVector v(130);
  CHECK(v.none());
  v.set(0);
  v.set(64);
  v.set(129);
  CHECK(v.count() == 3);
  CHECK(v.first_set() == 0);
  CHECK(v.next_set(0) == 64);
  CHECK(v.next_set(64) == 129);
  CHECK(v.next_set(129) == 130);
  CHECK(v.set_bits() == std::vector<std::size_t>{0, 64, 129});
  v.flip(64);
  CHECK_FALSE(v.test(64));
  BitVector w = BitVector::ones(130);
  CHECK(w.count() == 130);
  CHECK(v.is_subset_of(w));
  CHECK_FALSE(w.is_subset_of(v));
  CHECK((v ^ w).count() == 128);
  CHECK((v & w) == v);
  CHECK((v | w) == w);
  CHECK(v.dot(w) == false);
  CHECK(v.intersection_count(w) == 2);
}

TEST_CASE("bitvector codes and strings") {
  const BitVector v = BitVector::from_string("1011");
  CHECK(v.size() == 4);
  CHECK(v.to_code() == 0b1101);
  CHECK(v.to_string() == "1011");
  CHECK(BitVector::from_code(0b1101, 4) == v);
  CHECK(BitVector::from_code(0, 0).size() == 0);
  CHECK(BitVector::from_string("") == BitVector(0));
}

TEST_CASE("bitvector mixed sizes are rejected") {
  BitVector a(3), b(4);
  CHECK_THROWS(a ^= b);
  CHECK_THROWS((void)a.dot(b));
}

TEST_CASE("bitvector ordering and hashing") {
  const BitVector a = BitVector::from_string("100");
  const BitVector b = BitVector::from_string("010");
  CHECK(a < b);
  CHECK(BitVector(2) < BitVector(3));
  CHECK(BitVectorHash{}(a) == BitVectorHash{}(BitVector::from_string("100")));
}

TEST_CASE("bitvector for_each_set visits in order") {
  BitVector v(200);
  for (std::size_t i : {3, 70, 140, 199}) v.set(i);
  std::vector<std::size_t> seen;
  v.for_each_set([&](std::size_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<std::size_t>{3, 70, 140, 199});
}

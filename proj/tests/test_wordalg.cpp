#include <catch2/catch_amalgamated.hpp>

#include <afcurve/fields.hpp>
#include <afcurve/seqspace.hpp>
#include <afcurve/wordalg.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

using afc::Int;
using afc::Rat;
namespace alg = afc::alg;

namespace {

// Oracle 1: the word basis by brute force. Generate all 2^n strings over
// {x, y}, keep those with no run of more than r consecutive y's, sort.
// Independent of the library's extension-based enumerator.
std::vector<std::string> oracle_words(int r, int n) {
    std::vector<std::string> out;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
        std::string w(static_cast<size_t>(n), 'x');
        for (int i = 0; i < n; ++i)
            if (mask & (1LL << i)) w[static_cast<size_t>(i)] = 'y';
        int run = 0;
        bool ok = true;
        for (char ch : w) {
            run = (ch == 'y') ? run + 1 : 0;
            if (run > r) { ok = false; break; }
        }
        if (ok) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Oracle 2: compositions of n into parts from {1, ..., r+1}, counted by
// direct enumeration. This is the monomial count of the free algebra on
// generators of degrees 1..r+1, independent of any recurrence.
Int oracle_compositions(int r, int n) {
    if (n == 0) return 1;
    Int total = 0;
    for (int j = 1; j <= r + 1 && j <= n; ++j) total += oracle_compositions(r, n - j);
    return total;
}

alg::Element<Rat> mono(const alg::Params& p, const std::string& w) {
    return alg::Element<Rat>::monomial(p, w, Rat(1));
}

} // namespace

TEST_CASE("word basis matches brute force and is lexicographic", "[wordalg]") {
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        for (int n = 0; n <= 12; ++n) {
            auto got = alg::basis(p, n);
            auto want = oracle_words(r, n);
            REQUIRE(got == want);
            REQUIRE(Int(got.size()) == alg::b(p, n));
        }
    }
    alg::Params p1{1};
    REQUIRE(alg::basis(p1, 2) == std::vector<std::string>{"xx", "xy", "yx"});
    REQUIRE(alg::basis(p1, 0) == std::vector<std::string>{""});
    alg::Params p2{2};
    REQUIRE(alg::basis(p2, 3).size() == 7); // every length-3 word except yyy
}

TEST_CASE("dimension sequence starts with powers of two then recurses", "[wordalg]") {
    alg::Params p1{1};
    std::vector<Int> fib{1, 2, 3, 5, 8, 13};
    for (size_t n = 0; n < fib.size(); ++n) REQUIRE(alg::b(p1, static_cast<int>(n)) == fib[n]);

    alg::Params p2{2};
    std::vector<Int> trib{1, 2, 4, 7, 13, 24};
    for (size_t n = 0; n < trib.size(); ++n) REQUIRE(alg::b(p2, static_cast<int>(n)) == trib[n]);

    alg::Params p3{3};
    std::vector<Int> tet{1, 2, 4, 8, 15, 29, 56, 108};
    for (size_t n = 0; n < tet.size(); ++n) REQUIRE(alg::b(p3, static_cast<int>(n)) == tet[n]);

    // Window recurrence against the brute-force count, a bit past the table.
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        for (int n = 0; n <= 14; ++n)
            REQUIRE(alg::b(p, n) == Int(oracle_words(r, n).size()));
    }
}

TEST_CASE("multiplication kills forbidden runs and collects terms", "[wordalg]") {
    alg::Params p{1};
    auto y = mono(p, "y");
    auto x = mono(p, "x");

    REQUIRE(alg::multiply(p, y, y).is_zero());

    auto xy_sum = alg::add(x, y);
    auto sq = alg::multiply(p, xy_sum, xy_sum);
    alg::Element<Rat> want;
    want = alg::add(want, mono(p, "xx"));
    want = alg::add(want, mono(p, "xy"));
    want = alg::add(want, mono(p, "yx"));
    REQUIRE(sq == want);

    // Cancellation never leaves a stored zero coefficient.
    auto z = alg::add(sq, alg::scale(Rat(-1), sq));
    REQUIRE(z.is_zero());
    REQUIRE(z.terms.empty());
    REQUIRE(alg::scale(Rat(0), sq).terms.empty());
}

TEST_CASE("multiplication is graded and associative on random triples", "[wordalg]") {
    std::mt19937 rng(20260819u);
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        for (int trial = 0; trial < 200; ++trial) {
            auto draw = [&](int len) {
                std::string w;
                for (int i = 0; i < len; ++i) w += (rng() & 1) ? 'y' : 'x';
                return alg::Element<Rat>::monomial_or_zero(p, w, Rat(1 + static_cast<int>(rng() % 5)));
            };
            auto e1 = draw(1 + static_cast<int>(rng() % 4));
            auto e2 = draw(1 + static_cast<int>(rng() % 4));
            auto e3 = draw(1 + static_cast<int>(rng() % 4));
            auto left = alg::multiply(p, alg::multiply(p, e1, e2), e3);
            auto right = alg::multiply(p, e1, alg::multiply(p, e2, e3));
            REQUIRE(left == right);
        }
        // Gradedness: a product of monomials of degrees m and k is either zero
        // or a single word of degree m + k.
        for (const auto& w1 : alg::basis(p, 3))
            for (const auto& w2 : alg::basis(p, 2)) {
                auto prod = alg::multiply(p, mono(p, w1), mono(p, w2));
                if (!prod.is_zero()) {
                    REQUIRE(prod.terms.size() == 1);
                    REQUIRE(prod.terms.begin()->first.size() == 5);
                }
            }
    }
}

TEST_CASE("u generators expand as sums of cyclic-style words", "[wordalg]") {
    alg::Params p1{1};
    REQUIRE(alg::u<Rat>(p1, 1) == mono(p1, "x"));
    REQUIRE(alg::u<Rat>(p1, 2) == alg::add(mono(p1, "xy"), mono(p1, "yx")));

    alg::Params p2{2};
    auto u3 = alg::u<Rat>(p2, 3);
    auto want = alg::add(alg::add(mono(p2, "xyy"), mono(p2, "yxy")), mono(p2, "yyx"));
    REQUIRE(u3 == want);
    REQUIRE(u3.terms.size() == 3);

    alg::Params p3{3};
    REQUIRE(alg::u<Rat>(p3, 4).terms.size() == 4);

    REQUIRE_THROWS_AS(alg::u<Rat>(p1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(alg::u<Rat>(p1, 3), std::invalid_argument);
}

TEST_CASE("key relation: u_j equals u_{j-1} y plus y^{j-1} x", "[wordalg]") {
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        for (int j = 2; j <= r + 1; ++j) {
            auto lhs = alg::u<Rat>(p, j);
            auto rhs = alg::multiply(p, alg::u<Rat>(p, j - 1), mono(p, "y"));
            rhs = alg::add(rhs, mono(p, std::string(static_cast<size_t>(j - 1), 'y') + "x"));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("subalgebra dimensions match the power series prediction", "[wordalg]") {
    struct Run { int r; int N; };
    for (auto [r, N] : {Run{1, 12}, Run{2, 10}, Run{3, 9}}) {
        alg::Params p{r};
        auto table = alg::subalgebra_dims(p, N);
        REQUIRE(table.size() == static_cast<size_t>(N) + 1);
        for (int n = 0; n <= N; ++n) {
            REQUIRE(table[static_cast<size_t>(n)].computed == table[static_cast<size_t>(n)].predicted);
            REQUIRE(table[static_cast<size_t>(n)].predicted == oracle_compositions(r, n));
        }
    }

    alg::Params p1{1};
    auto t1 = alg::subalgebra_dims(p1, 4);
    std::vector<Int> want{1, 1, 2, 3, 5};
    for (size_t n = 0; n < want.size(); ++n) REQUIRE(t1[n].computed == want[n]);
    REQUIRE(t1[2].computed == 2); // span{u_1 u_1, u_2} inside the 3-dimensional degree-2 slice

    alg::Params p2{2};
    auto t2 = alg::subalgebra_dims(p2, 3);
    REQUIRE(t2[3].computed == 4);

    REQUIRE_THROWS_AS(alg::subalgebra_dims(p1, 10, 5), afc::resource_limit_error);
}

TEST_CASE("y-power translates of the subalgebra fill the whole degree", "[wordalg]") {
    struct Run { int r; int N; };
    for (auto [r, N] : {Run{1, 11}, Run{2, 9}, Run{3, 8}}) {
        alg::Params p{r};
        REQUIRE(alg::freeness_shadow(p, N));
    }
    // The counting identity behind it, for a window past the span check.
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        for (int n = 0; n <= 20; ++n) {
            Int sum = 0;
            for (int i = 0; i <= std::min(r, n); ++i) sum += alg::a(p, n - i);
            REQUIRE(sum == alg::b(p, n));
        }
    }
    REQUIRE_THROWS_AS(alg::freeness_shadow(alg::Params{1}, 10, 5), afc::resource_limit_error);
}

TEST_CASE("the two-sided ideal of x equals the right multiples of the u's", "[wordalg]") {
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        int N = 10;
        auto table = alg::left_ideal_dims(p, N);
        REQUIRE(table.size() == static_cast<size_t>(N) + 1);
        for (int n = 0; n <= N; ++n) {
            const auto& row = table[static_cast<size_t>(n)];
            Int codim_pred = alg::b(p, n) - (n <= r ? 1 : 0);
            Int window = 0;
            for (int i = 1; i <= r + 1 && i <= n; ++i) window += alg::b(p, n - i);
            REQUIRE(row.dim_xideal == row.dim_usubmodule);
            REQUIRE(row.dim_xideal == codim_pred);
            REQUIRE(row.dim_xideal == window);
        }
    }
    alg::Params p1{1};
    auto t1 = alg::left_ideal_dims(p1, 3);
    REQUIRE(t1[1].dim_xideal == 1);
    REQUIRE(t1[3].dim_xideal == 5);
    alg::Params p2{2};
    auto t2 = alg::left_ideal_dims(p2, 2);
    REQUIRE(t2[2].dim_xideal == 3);
}

TEST_CASE("hilbert series identity holds exactly to degree forty", "[wordalg]") {
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        REQUIRE(alg::hilbert_identity(p, 10));
        REQUIRE(alg::hilbert_identity(p, 40));
    }
}

TEST_CASE("word dimensions agree with sequence-space counts", "[wordalg]") {
    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        afc::seq::Params sp{r};
        for (int n = 0; n <= 40; ++n) REQUIRE(alg::b(p, n) == afc::seq::c(sp, n));
    }
}

TEST_CASE("block decomposition partitions the basis by leading y count", "[wordalg]") {
    alg::Params p1{1};
    REQUIRE(alg::block_decompose(p1, 2, "yx") == 1);
    REQUIRE(alg::block_decompose(p1, 3, "xyx") == 0);
    alg::Params p2{2};
    REQUIRE(alg::block_decompose(p2, 4, "yyxy") == 2);

    for (int r = 1; r <= 3; ++r) {
        alg::Params p{r};
        for (int n = r + 1; n <= 12; ++n) {
            auto words = alg::basis(p, n);
            std::map<int, Int> counts;
            int prev = 0;
            for (const auto& w : words) {
                int i = alg::block_decompose(p, n, w);
                REQUIRE(i >= 0);
                REQUIRE(i <= r);
                REQUIRE(i >= prev); // lex order lists the blocks contiguously
                prev = i;
                ++counts[i];
            }
            Int total = 0;
            for (int i = 0; i <= r; ++i) {
                REQUIRE(counts[i] == alg::b(p, n - i - 1));
                total += counts[i];
            }
            REQUIRE(total == alg::b(p, n));
        }
        REQUIRE_THROWS_AS(alg::block_decompose(p, r, std::string(static_cast<size_t>(r), 'y')),
                          std::invalid_argument);
    }
}

TEST_CASE("element arithmetic works over the two-element field", "[wordalg]") {
    alg::Params p{1};
    auto x = alg::Element<afc::F2>::monomial(p, "x", afc::F2(1));
    auto y = alg::Element<afc::F2>::monomial(p, "y", afc::F2(1));
    auto s = alg::add(x, y);
    REQUIRE(alg::add(s, s).is_zero()); // characteristic two
    auto sq = alg::multiply(p, s, s);
    REQUIRE(sq.terms.size() == 3); // xx + xy + yx, the yy term dies
    REQUIRE(alg::multiply(p, y, y).is_zero());
}

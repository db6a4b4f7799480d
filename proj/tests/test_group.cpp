#include "doctest.h"

#include "horonerve/error.hpp"
#include "horonerve/group.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

using namespace horonerve;

namespace {

// Rewriting oracle for free products of free-abelian atoms: cancel adjacent
// inverse letters and sort adjacent letters of the same atom by generator.
// Independent of the syllable arithmetic in the library.
std::vector<Letter> rewrite_oracle(const GroupSpec& spec, std::vector<Letter> w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            const Letter a = w[i], b = w[i + 1];
            if ((a ^ 1) == b) {
                w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
            if (spec.atom_of_generator(a / 2) == spec.atom_of_generator(b / 2) && a / 2 > b / 2) {
                std::swap(w[i], w[i + 1]);
                changed = true;
                break;
            }
        }
    }
    return w;
}

std::vector<Letter> random_word(std::mt19937& rng, const GroupSpec& spec, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> letter(0, spec.letter_count() - 1);
    std::vector<Letter> w(len(rng));
    for (auto& l : w) l = letter(rng);
    return w;
}

std::vector<GroupSpec> families() {
    return {GroupSpec::free(2), GroupSpec::free_abelian(2), GroupSpec::free_abelian(3),
            GroupSpec::free_product({{GroupFamily::FreeAbelian, 2}, {GroupFamily::FreeAbelian, 1}}),
            GroupSpec::free_product({{GroupFamily::Free, 2}, {GroupFamily::FreeAbelian, 2}})};
}

} // namespace

TEST_CASE("normal form examples") {
    const auto f2 = GroupSpec::free(2);
    CHECK(format_element(f2, parse_element(f2, "a a^-1 b")) == "b");

    const auto z2 = GroupSpec::free_abelian(2);
    CHECK(format_element(z2, parse_element(z2, "x y x")) == "x^2 y");

    const auto z2z = GroupSpec::free_product({{GroupFamily::FreeAbelian, 2}, {GroupFamily::FreeAbelian, 1}},
                                             {"x", "y", "t"});
    const auto g = parse_element(z2z, "x t x t^-1");
    CHECK(g.syllables().size() == 4);
    CHECK(g.length() == 4);
    CHECK(format_element(z2z, g) == "x t x t^-1");
}

TEST_CASE("unknown letters are rejected by name") {
    const auto f2 = GroupSpec::free(2);
    try {
        parse_element(f2, "a q b");
        FAIL("expected UnknownLetterError");
    } catch (const UnknownLetterError& e) {
        CHECK(e.letter() == "q");
    }
    CHECK_THROWS_AS(normal_form(f2, {0, 7}), UnknownLetterError);
}

TEST_CASE("normal form agrees with the rewriting oracle") {
    std::mt19937 rng(20261016);
    for (const auto& spec : families()) {
        for (int trial = 0; trial < 300; ++trial) {
            const auto w = random_word(rng, spec, 10);
            const auto nf = normal_form(spec, w);
            CHECK(shortlex_word(spec, nf) == rewrite_oracle(spec, w));
            // idempotence
            CHECK(normal_form(spec, shortlex_word(spec, nf)) == nf);
        }
    }
}

TEST_CASE("normal form equality matches equality in the radius-4 ball") {
    // Two words name the same element iff their oracle forms match.
    const auto spec = GroupSpec::free_product({{GroupFamily::FreeAbelian, 2}, {GroupFamily::FreeAbelian, 1}});
    std::mt19937 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        auto w1 = random_word(rng, spec, 4);
        auto w2 = random_word(rng, spec, 4);
        CHECK((normal_form(spec, w1) == normal_form(spec, w2)) ==
              (rewrite_oracle(spec, w1) == rewrite_oracle(spec, w2)));
    }
}

TEST_CASE("word metric examples") {
    const auto z2 = GroupSpec::free_abelian(2);
    CHECK(word_metric(identity(), identity()) == 0);
    CHECK(word_metric(identity(), parse_element(z2, "x^2 y^3")) == 5);
    const auto f2 = GroupSpec::free(2);
    CHECK(word_metric(parse_element(f2, "a"), parse_element(f2, "b")) == 2);
}

TEST_CASE("word metric axioms and left invariance on radius-3 balls") {
    for (const auto& spec : families()) {
        const auto b = ball(spec, 2);
        const auto b3 = ball(spec, 1);
        for (const auto& x : b)
            for (const auto& y : b) {
                const auto dxy = word_metric(x, y);
                CHECK(dxy == word_metric(y, x));
                CHECK((dxy == 0) == (x == y));
                for (const auto& g : b3) CHECK(word_metric(multiply(g, x), multiply(g, y)) == dxy);
            }
        // triangle inequality on a sample of triples
        for (std::size_t i = 0; i < b.size(); i += 3)
            for (std::size_t j = 0; j < b.size(); j += 2)
                for (std::size_t k = 0; k < b.size(); k += 5)
                    CHECK(word_metric(b[i], b[k]) <= word_metric(b[i], b[j]) + word_metric(b[j], b[k]));
    }
}

TEST_CASE("ball sizes") {
    CHECK(ball(GroupSpec::free(2), 0).size() == 1);
    CHECK(ball(GroupSpec::free(2), 1).size() == 5);
    CHECK(ball(GroupSpec::free(2), 2).size() == 17);
    CHECK(ball(GroupSpec::free_abelian(2), 2).size() == 13);
    for (int r = 0; r <= 5; ++r) {
        CHECK(ball(GroupSpec::free_abelian(2), r).size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
        std::size_t free_count = 1, sphere = 4;
        for (int s = 1; s <= r; ++s, sphere *= 3) free_count += sphere;
        CHECK(ball(GroupSpec::free(2), r).size() == free_count);
    }
    CHECK_THROWS_AS(ball(GroupSpec::free(2), 6, 100), ResourceLimitError);
}

TEST_CASE("ball is in breadth-first order with the exact length bound") {
    for (const auto& spec : families()) {
        const auto b = ball(spec, 3);
        std::int64_t prev = 0;
        for (const auto& g : b) {
            CHECK(g.length() >= prev);
            CHECK(g.length() <= 3);
            prev = g.length();
        }
        CHECK(std::set<Element>(b.begin(), b.end()).size() == b.size());
    }
}

TEST_CASE("coset enumeration examples") {
    const auto f2 = GroupSpec::free(2);
    const auto table = enumerate_cosets(f2, {{0}}, 1);
    REQUIRE(table.entries.size() == 3);
    CHECK(format_element(f2, table.entries[0].representative) == "e");
    CHECK(format_element(f2, table.entries[1].representative) == "b");
    CHECK(format_element(f2, table.entries[2].representative) == "b^-1");
    CHECK(coset_table_csv(f2, table) == "index,representative,peripheral\n1,e,1\n2,b,1\n3,b^-1,1\n");

    // Oracle: strip trailing a-powers from every ball element and dedupe.
    for (int r = 0; r <= 4; ++r) {
        std::set<std::string> oracle;
        for (const auto& g : ball(f2, r)) {
            auto w = f2.parse_word(format_element(f2, g));
            while (!w.empty() && w.back() / 2 == 0) w.pop_back();
            oracle.insert(format_element(f2, normal_form(f2, w)));
        }
        std::set<std::string> got;
        for (const auto& e : enumerate_cosets(f2, {{0}}, r).entries)
            got.insert(format_element(f2, e.representative));
        CHECK(got == oracle);
    }

    const auto z2z = GroupSpec::free_product({{GroupFamily::FreeAbelian, 2}, {GroupFamily::FreeAbelian, 1}});
    CHECK(enumerate_cosets(z2z, {{0}}, 0).entries.size() == 1);
    const auto two = enumerate_cosets(z2z, {{0, 1}}, 0);
    REQUIRE(two.entries.size() == 2);
    CHECK(two.entries[0].index == 1);
    CHECK(two.entries[0].peripheral == 1);
    CHECK(two.entries[1].index == 2);
    CHECK(two.entries[1].peripheral == 2);
}

TEST_CASE("coset representatives are distinct, shortlex-least, and index-consistent") {
    for (const auto& spec : families()) {
        std::vector<int> atoms;
        for (int a = 0; a < static_cast<int>(spec.atoms().size()) && a < 2; ++a) atoms.push_back(a);
        const PeripheralSpec periph{atoms};
        const auto table = enumerate_cosets(spec, periph, 3);
        const int k = static_cast<int>(atoms.size());
        std::set<int> indices;
        for (const auto& ei : table.entries) {
            CHECK(indices.insert(ei.index).second);
            CHECK((ei.index - ei.peripheral) % k == 0);
            const int atom = atoms[ei.peripheral - 1];
            // shortlex-least: no element of the coset met in the ball is shorter
            for (const auto& p : ball(spec, 2)) {
                if (!in_atom(p, atom)) continue;
                const auto other = multiply(ei.representative, p);
                if (other != ei.representative) CHECK(shortlex_less(spec, ei.representative, other));
            }
            for (const auto& ej : table.entries) {
                if (ei.index == ej.index || ei.peripheral != ej.peripheral) continue;
                CHECK_FALSE(in_atom(multiply(inverse(ei.representative), ej.representative), atom));
            }
        }
    }
}

TEST_CASE("peripheral validation") {
    const auto f2 = GroupSpec::free(2);
    CHECK_THROWS_AS(enumerate_cosets(f2, {{5}}, 1), InvalidArgumentError);
    CHECK_THROWS_AS(enumerate_cosets(f2, {}, 1), InvalidArgumentError);
    CHECK_THROWS_AS(GroupSpec::free(2, {"a", "a"}), InvalidArgumentError);
}

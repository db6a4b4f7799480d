#pragma once

// Finitely generated groups with solvable word problem: free products of
// free-abelian atoms. A free group of rank k is the free product of k copies
// of Z, so every supported family reduces to a list of atoms.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace horonerve {

enum class GroupFamily { Free, FreeAbelian, FreeProduct };

std::string to_string(GroupFamily family);

/// One factor of a user-level free product.
struct FactorSpec {
    GroupFamily kind = GroupFamily::FreeAbelian;  // Free or FreeAbelian
    int rank = 1;
};

/// A free-abelian free factor. Generators of an atom are consecutive.
struct Atom {
    int rank = 1;
    int first_generator = 0;
};

/// Letters are numbered 2g (generator g) and 2g+1 (its inverse); this is the
/// alphabet order used for shortlex comparisons.
using Letter = int;

class GroupSpec {
public:
    static GroupSpec free(int rank, std::vector<std::string> names = {});
    static GroupSpec free_abelian(int rank, std::vector<std::string> names = {});
    static GroupSpec free_product(const std::vector<FactorSpec>& factors,
                                  std::vector<std::string> names = {});

    GroupFamily family() const noexcept { return family_; }
    const std::vector<FactorSpec>& factors() const noexcept { return factors_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }

    int generator_count() const noexcept { return static_cast<int>(names_.size()); }
    int letter_count() const noexcept { return 2 * generator_count(); }
    const std::string& generator_name(int g) const { return names_.at(g); }
    std::string letter_name(Letter letter) const;
    int atom_of_generator(int g) const { return generator_atom_.at(g); }

    /// Accepts "a" or "a^-1".
    Letter parse_letter(std::string_view token) const;
    /// Whitespace- or '.'-separated tokens; "a^k" expands to |k| letters.
    std::vector<Letter> parse_word(std::string_view text) const;

    /// Atom whose generators include `name`; throws UnknownLetterError.
    int atom_by_generator_name(std::string_view name) const;

    std::string describe() const;

private:
    GroupSpec(GroupFamily family, std::vector<FactorSpec> factors, std::vector<std::string> names);

    GroupFamily family_;
    std::vector<FactorSpec> factors_;
    std::vector<Atom> atoms_;
    std::vector<std::string> names_;
    std::vector<int> generator_atom_;
};

struct Syllable {
    int atom = 0;
    std::vector<std::int64_t> exponents;

    auto operator<=>(const Syllable&) const = default;
    bool operator==(const Syllable&) const = default;
};

/// Canonical normal form: maximal syllables, consecutive syllables in
/// different atoms, no zero syllable.
class Element {
public:
    Element() = default;

    /// Builds from syllables already in normal form; throws on violations.
    static Element from_syllables(std::vector<Syllable> syllables);

    const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
    bool is_identity() const noexcept { return syllables_.empty(); }

    /// Geodesic word length with respect to the standard generators.
    std::int64_t length() const;

    auto operator<=>(const Element&) const = default;
    bool operator==(const Element&) const = default;

private:
    friend Element multiply(const Element&, const Element&);
    friend Element inverse(const Element&);
    friend Element from_letter(const GroupSpec&, Letter);

    std::vector<Syllable> syllables_;
};

Element identity();
Element from_letter(const GroupSpec& spec, Letter letter);
Element multiply(const Element& x, const Element& y);
Element inverse(const Element& x);

/// Throws UnknownLetterError on letters outside the alphabet.
Element normal_form(const GroupSpec& spec, const std::vector<Letter>& word);
Element parse_element(const GroupSpec& spec, std::string_view text);

/// Shortlex-least geodesic word of x.
std::vector<Letter> shortlex_word(const GroupSpec& spec, const Element& x);
/// Strict shortlex order on elements (length first, then lexicographic).
bool shortlex_less(const GroupSpec& spec, const Element& x, const Element& y);

std::string format_element(const GroupSpec& spec, const Element& x);

/// d_S(x, y) = |x^-1 y|.
std::int64_t word_metric(const Element& x, const Element& y);

/// All elements with |g| <= radius, in breadth-first order (generators in
/// alphabet order). Throws ResourceLimitError past `budget` elements.
std::vector<Element> ball(const GroupSpec& spec, int radius, std::size_t budget);
std::vector<Element> ball(const GroupSpec& spec, int radius);

/// Peripheral subgroups P_1..P_k, each a single atom of the free product.
struct PeripheralSpec {
    std::vector<int> atoms;

    std::size_t size() const noexcept { return atoms.size(); }
    bool empty() const noexcept { return atoms.empty(); }
};

/// Validates atom indices against the spec.
void validate(const GroupSpec& spec, const PeripheralSpec& periph);

bool in_atom(const Element& x, int atom);

/// Shortlex-least representative of x * P where P is the given atom.
Element coset_representative(const Element& x, int atom);

struct CosetEntry {
    int index = 0;       // global index i = a*k + r (1-based)
    int peripheral = 0;  // r in 1..k
    Element representative;
};

struct CosetTable {
    int radius = 0;
    int peripheral_count = 0;
    std::vector<CosetEntry> entries;  // sorted by index; indices may skip when counts differ
};

/// Every coset g P_r meeting the radius ball, indexed round-robin over r.
CosetTable enumerate_cosets(const GroupSpec& spec, const PeripheralSpec& periph, int radius);

std::string coset_table_csv(const GroupSpec& spec, const CosetTable& table);

} // namespace horonerve

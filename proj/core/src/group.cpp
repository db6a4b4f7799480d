#include "horonerve/group.hpp"

#include "horonerve/error.hpp"
#include "horonerve/limits.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace horonerve {

std::size_t vertex_budget() {
    if (const char* env = std::getenv("HORONERVE_VERTEX_BUDGET")) {
        std::size_t value = 0;
        const std::string_view text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) return value;
    }
    return 200000;
}

std::string to_string(GroupFamily family) {
    switch (family) {
    case GroupFamily::Free: return "free";
    case GroupFamily::FreeAbelian: return "free-abelian";
    case GroupFamily::FreeProduct: return "free-product";
    }
    return "unknown";
}

namespace {

std::vector<std::string> default_names(int count, std::string_view pool) {
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) {
        if (i < static_cast<int>(pool.size()))
            names.emplace_back(1, pool[i]);
        else
            names.push_back("g" + std::to_string(i));
    }
    return names;
}

} // namespace

GroupSpec::GroupSpec(GroupFamily family, std::vector<FactorSpec> factors, std::vector<std::string> names)
    : family_(family), factors_(std::move(factors)) {
    int total = 0;
    for (const auto& f : factors_) {
        if (f.rank < 1) throw InvalidArgumentError("factor rank must be at least 1");
        if (f.kind == GroupFamily::FreeProduct)
            throw InvalidArgumentError("free-product factors must be free or free-abelian");
        total += f.rank;
    }
    if (total == 0) throw InvalidArgumentError("group needs at least one generator");

    if (names.empty()) {
        names = family_ == GroupFamily::FreeAbelian ? default_names(total, "xyzwuvrs")
                                                    : default_names(total, "abcdefhjkmnpqstuvwxyz");
    }
    if (static_cast<int>(names.size()) != total)
        throw InvalidArgumentError("expected " + std::to_string(total) + " generator names");
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& n = names[i];
        if (n.empty() || n.find_first_of(" \t.^,;|") != std::string::npos || n == "e")
            throw InvalidArgumentError("invalid generator name '" + n + "'");
        if (std::find(names.begin(), names.begin() + static_cast<long>(i), n) != names.begin() + static_cast<long>(i))
            throw InvalidArgumentError("duplicate generator name '" + n + "'");
    }
    names_ = std::move(names);

    // A free factor of rank k contributes k cyclic atoms.
    int g = 0;
    for (const auto& f : factors_) {
        if (f.kind == GroupFamily::Free) {
            for (int i = 0; i < f.rank; ++i) atoms_.push_back({1, g++});
        } else {
            atoms_.push_back({f.rank, g});
            g += f.rank;
        }
    }
    for (int a = 0; a < static_cast<int>(atoms_.size()); ++a)
        for (int i = 0; i < atoms_[a].rank; ++i) generator_atom_.push_back(a);
}

GroupSpec GroupSpec::free(int rank, std::vector<std::string> names) {
    return GroupSpec(GroupFamily::Free, {{GroupFamily::Free, rank}}, std::move(names));
}

GroupSpec GroupSpec::free_abelian(int rank, std::vector<std::string> names) {
    return GroupSpec(GroupFamily::FreeAbelian, {{GroupFamily::FreeAbelian, rank}}, std::move(names));
}

GroupSpec GroupSpec::free_product(const std::vector<FactorSpec>& factors, std::vector<std::string> names) {
    if (factors.empty()) throw InvalidArgumentError("free product needs at least one factor");
    return GroupSpec(GroupFamily::FreeProduct, factors, std::move(names));
}

std::string GroupSpec::letter_name(Letter letter) const {
    if (letter < 0 || letter >= letter_count()) throw UnknownLetterError(std::to_string(letter));
    const auto& base = names_[letter / 2];
    return letter % 2 == 0 ? base : base + "^-1";
}

Letter GroupSpec::parse_letter(std::string_view token) const {
    std::string_view base = token;
    bool inverse = false;
    if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
        base = token.substr(0, token.size() - 3);
        inverse = true;
    }
    for (int g = 0; g < generator_count(); ++g)
        if (names_[g] == base) return 2 * g + (inverse ? 1 : 0);
    throw UnknownLetterError(std::string(token));
}

std::vector<Letter> GroupSpec::parse_word(std::string_view text) const {
    std::vector<Letter> word;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) && text[end] != '.')
            ++end;
        std::string_view token = text.substr(pos, end - pos);
        pos = end;
        if (token == "e") continue;

        const auto caret = token.find('^');
        if (caret == std::string_view::npos || token.substr(caret) == "^-1") {
            word.push_back(parse_letter(token));
            continue;
        }
        const auto base = token.substr(0, caret);
        const auto exponent_text = token.substr(caret + 1);
        long exponent = 0;
        auto [ptr, ec] = std::from_chars(exponent_text.data(), exponent_text.data() + exponent_text.size(), exponent);
        if (ec != std::errc() || ptr != exponent_text.data() + exponent_text.size())
            throw UnknownLetterError(std::string(token));
        const Letter letter = parse_letter(base);
        for (long i = 0; i < std::labs(exponent); ++i) word.push_back(exponent > 0 ? letter : (letter ^ 1));
    }
    return word;
}

int GroupSpec::atom_by_generator_name(std::string_view name) const {
    for (int g = 0; g < generator_count(); ++g)
        if (names_[g] == name) return generator_atom_[g];
    throw UnknownLetterError(std::string(name));
}

std::string GroupSpec::describe() const {
    std::ostringstream out;
    out << to_string(family_) << "(";
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        if (a) out << " * ";
        out << "Z";
        if (atoms_[a].rank > 1) out << "^" << atoms_[a].rank;
        out << "<";
        for (int i = 0; i < atoms_[a].rank; ++i) {
            if (i) out << ",";
            out << names_[atoms_[a].first_generator + i];
        }
        out << ">";
    }
    out << ")";
    return out.str();
}

std::int64_t Element::length() const {
    std::int64_t total = 0;
    for (const auto& s : syllables_)
        for (auto e : s.exponents) total += e < 0 ? -e : e;
    return total;
}

Element Element::from_syllables(std::vector<Syllable> syllables) {
    for (std::size_t i = 0; i < syllables.size(); ++i) {
        const auto& s = syllables[i];
        if (std::all_of(s.exponents.begin(), s.exponents.end(), [](auto e) { return e == 0; }))
            throw InvalidArgumentError("zero syllable in normal form");
        if (i > 0 && syllables[i - 1].atom == s.atom)
            throw InvalidArgumentError("adjacent syllables share an atom");
    }
    Element x;
    x.syllables_ = std::move(syllables);
    return x;
}

Element identity() { return {}; }

Element from_letter(const GroupSpec& spec, Letter letter) {
    if (letter < 0 || letter >= spec.letter_count()) throw UnknownLetterError(std::to_string(letter));
    const int g = letter / 2;
    const int atom = spec.atom_of_generator(g);
    const auto& a = spec.atoms()[atom];
    Syllable s{atom, std::vector<std::int64_t>(a.rank, 0)};
    s.exponents[g - a.first_generator] = letter % 2 == 0 ? 1 : -1;
    Element x;
    x.syllables_.push_back(std::move(s));
    return x;
}

Element multiply(const Element& x, const Element& y) {
    Element out;
    out.syllables_ = x.syllables_;
    auto& acc = out.syllables_;
    std::size_t i = 0;
    // Merge across the junction; cancellation can cascade.
    while (i < y.syllables_.size() && !acc.empty() && acc.back().atom == y.syllables_[i].atom) {
        auto& last = acc.back();
        const auto& next = y.syllables_[i];
        for (std::size_t c = 0; c < last.exponents.size(); ++c) last.exponents[c] += next.exponents[c];
        ++i;
        const bool zero = std::all_of(last.exponents.begin(), last.exponents.end(), [](auto e) { return e == 0; });
        if (!zero) break;
        acc.pop_back();
    }
    acc.insert(acc.end(), y.syllables_.begin() + static_cast<long>(i), y.syllables_.end());
    return out;
}

Element inverse(const Element& x) {
    Element out;
    out.syllables_.reserve(x.syllables_.size());
    for (auto it = x.syllables_.rbegin(); it != x.syllables_.rend(); ++it) {
        Syllable s = *it;
        for (auto& e : s.exponents) e = -e;
        out.syllables_.push_back(std::move(s));
    }
    return out;
}

Element normal_form(const GroupSpec& spec, const std::vector<Letter>& word) {
    Element x;
    for (Letter l : word) x = multiply(x, from_letter(spec, l));
    return x;
}

Element parse_element(const GroupSpec& spec, std::string_view text) { return normal_form(spec, spec.parse_word(text)); }

std::vector<Letter> shortlex_word(const GroupSpec& spec, const Element& x) {
    std::vector<Letter> word;
    for (const auto& s : x.syllables()) {
        const auto& atom = spec.atoms()[s.atom];
        for (int c = 0; c < atom.rank; ++c) {
            const auto e = s.exponents[c];
            const Letter letter = 2 * (atom.first_generator + c) + (e < 0 ? 1 : 0);
            for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) word.push_back(letter);
        }
    }
    return word;
}

bool shortlex_less(const GroupSpec& spec, const Element& x, const Element& y) {
    const auto lx = x.length();
    const auto ly = y.length();
    if (lx != ly) return lx < ly;
    const auto wx = shortlex_word(spec, x);
    const auto wy = shortlex_word(spec, y);
    return wx < wy;
}

std::string format_element(const GroupSpec& spec, const Element& x) {
    if (x.is_identity()) return "e";
    std::string out;
    for (const auto& s : x.syllables()) {
        const auto& atom = spec.atoms()[s.atom];
        for (int c = 0; c < atom.rank; ++c) {
            const auto e = s.exponents[c];
            if (e == 0) continue;
            if (!out.empty()) out += ' ';
            out += spec.generator_name(atom.first_generator + c);
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

std::int64_t word_metric(const Element& x, const Element& y) { return multiply(inverse(x), y).length(); }

std::vector<Element> ball(const GroupSpec& spec, int radius, std::size_t budget) {
    if (radius < 0) throw InvalidArgumentError("ball radius must be nonnegative");
    std::vector<Element> order{identity()};
    std::map<Element, int> seen{{identity(), 0}};
    std::vector<Element> generators;
    for (Letter l = 0; l < spec.letter_count(); ++l) generators.push_back(from_letter(spec, l));

    std::size_t frontier_begin = 0;
    for (int r = 0; r < radius; ++r) {
        const std::size_t frontier_end = order.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& s : generators) {
                Element next = multiply(order[i], s);
                if (seen.contains(next)) continue;
                seen.emplace(next, static_cast<int>(order.size()));
                order.push_back(std::move(next));
                if (order.size() > budget)
                    throw ResourceLimitError("ball of radius " + std::to_string(radius) + " exceeds budget of " +
                                             std::to_string(budget) + " elements");
            }
        }
        frontier_begin = frontier_end;
    }
    return order;
}

std::vector<Element> ball(const GroupSpec& spec, int radius) { return ball(spec, radius, vertex_budget()); }

void validate(const GroupSpec& spec, const PeripheralSpec& periph) {
    std::vector<int> seen;
    for (int a : periph.atoms) {
        if (a < 0 || a >= static_cast<int>(spec.atoms().size()))
            throw InvalidArgumentError("peripheral atom index " + std::to_string(a) + " out of range");
        if (std::find(seen.begin(), seen.end(), a) != seen.end())
            throw InvalidArgumentError("peripheral atom listed twice");
        seen.push_back(a);
    }
}

bool in_atom(const Element& x, int atom) {
    return x.is_identity() || (x.syllables().size() == 1 && x.syllables().front().atom == atom);
}

Element coset_representative(const Element& x, int atom) {
    if (x.is_identity() || x.syllables().back().atom != atom) return x;
    auto syllables = x.syllables();
    syllables.pop_back();
    return Element::from_syllables(std::move(syllables));
}

CosetTable enumerate_cosets(const GroupSpec& spec, const PeripheralSpec& periph, int radius) {
    validate(spec, periph);
    if (periph.empty()) throw InvalidArgumentError("coset enumeration needs at least one peripheral subgroup");
    if (radius < 0) throw InvalidArgumentError("coset radius must be nonnegative");
    const auto elements = ball(spec, radius);
    const int k = static_cast<int>(periph.size());

    CosetTable table;
    table.radius = radius;
    table.peripheral_count = k;
    for (int r = 1; r <= k; ++r) {
        const int atom = periph.atoms[r - 1];
        std::vector<Element> reps;
        for (const auto& g : elements) reps.push_back(coset_representative(g, atom));
        std::sort(reps.begin(), reps.end(),
                  [&](const Element& a, const Element& b) { return shortlex_less(spec, a, b); });
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
        for (std::size_t a = 0; a < reps.size(); ++a)
            table.entries.push_back({static_cast<int>(a) * k + r, r, reps[a]});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const CosetEntry& a, const CosetEntry& b) { return a.index < b.index; });
    return table;
}

std::string coset_table_csv(const GroupSpec& spec, const CosetTable& table) {
    std::string out = "index,representative,peripheral\n";
    for (const auto& e : table.entries)
        out += std::to_string(e.index) + "," + format_element(spec, e.representative) + "," +
               std::to_string(e.peripheral) + "\n";
    return out;
}

} // namespace horonerve

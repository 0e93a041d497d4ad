#include "cpn/multiset.hpp"

#include <sstream>

namespace cpn {

void Multiset::check_arity(const Color& c) const {
    if (!counts_.empty() && counts_.begin()->first.arity() != c.arity())
        throw StructuralError("multiset arity mismatch");
}

Multiset Multiset::of(const Color& c, std::uint64_t n) {
    Multiset m;
    m.add(c, n);
    return m;
}

void Multiset::add(const Color& c, std::uint64_t n) {
    if (n == 0) return;
    check_arity(c);
    counts_[c] += n;
}

std::uint64_t Multiset::count(const Color& c) const {
    auto it = counts_.find(c);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t Multiset::cardinality() const {
    std::uint64_t n = 0;
    for (const auto& [c, k] : counts_) n += k;
    return n;
}

Multiset Multiset::set_union(const Multiset& other) const {
    Multiset out = *this;
    for (const auto& [c, k] : other.counts_) out.add(c, k);
    return out;
}

Multiset Multiset::subtract(const Multiset& other) const {
    if (!counts_.empty() && !other.counts_.empty()) check_arity(other.counts_.begin()->first);
    Multiset out;
    for (const auto& [c, k] : counts_) {
        std::uint64_t sub = other.count(c);
        if (k > sub) out.counts_[c] = k - sub;
    }
    return out;
}

Multiset Multiset::scale(std::uint64_t n) const {
    Multiset out;
    if (n == 0) return out;
    for (const auto& [c, k] : counts_) out.counts_[c] = k * n;
    return out;
}

bool Multiset::includes(const Multiset& other) const {
    for (const auto& [c, k] : other.counts_)
        if (count(c) < k) return false;
    return true;
}

std::set<Color> Multiset::support() const {
    std::set<Color> out;
    for (const auto& [c, k] : counts_) out.insert(c);
    return out;
}

std::string Multiset::to_string() const {
    if (counts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, k] : counts_) {
        if (!first) os << '+';
        first = false;
        os << k << '\'' << '(' ;
        for (std::size_t i = 0; i < c.components.size(); ++i) {
            if (i) os << ',';
            os << c.components[i];
        }
        os << ')';
    }
    return os.str();
}

std::string Marking::key() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < by_place.size(); ++i) {
        if (by_place[i].empty()) continue;
        os << i << ':' << by_place[i].to_string() << ';';
    }
    return os.str();
}

}  // namespace cpn

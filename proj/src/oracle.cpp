#include "cpn/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace cpn {

namespace {

/// Disjoint union of two LTSs with actions unified by label.
struct Union {
    std::size_t n = 0;                 // total states; b's states offset by a's count
    std::size_t offset = 0;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;  // per state: (action, dst)
};

Union make_union(const Lts& a, const Lts& b) {
    Union u;
    u.offset = a.state_keys.size();
    u.n = a.state_keys.size() + b.state_keys.size();
    u.out.resize(u.n);

    std::map<std::string, std::size_t> action_ids;
    auto action_id = [&](const std::string& label) {
        auto it = action_ids.find(label);
        if (it != action_ids.end()) return it->second;
        std::size_t id = action_ids.size();
        action_ids.emplace(label, id);
        return id;
    };

    for (const auto& [src, act, dst] : a.edges)
        u.out[src].emplace_back(action_id(a.actions[act]), dst);
    for (const auto& [src, act, dst] : b.edges)
        u.out[u.offset + src].emplace_back(action_id(b.actions[act]), u.offset + dst);
    for (auto& edges : u.out) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    return u;
}

}  // namespace

bool bisimilar(const Lts& a, const Lts& b, std::size_t state_a, std::size_t state_b) {
    Union u = make_union(a, b);
    std::vector<std::size_t> block(u.n, 0);
    std::size_t blocks = 1;

    while (true) {
        // Signature: sorted set of (action, successor block).
        std::map<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>,
                 std::size_t>
            sig_to_block;
        std::vector<std::size_t> next(u.n);
        for (std::size_t s = 0; s < u.n; ++s) {
            std::vector<std::pair<std::size_t, std::size_t>> sig;
            sig.reserve(u.out[s].size());
            for (const auto& [act, dst] : u.out[s]) sig.emplace_back(act, block[dst]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto key = std::make_pair(block[s], std::move(sig));
            auto it = sig_to_block.find(key);
            if (it == sig_to_block.end())
                it = sig_to_block.emplace(std::move(key), sig_to_block.size()).first;
            next[s] = it->second;
        }
        if (sig_to_block.size() == blocks) break;
        blocks = sig_to_block.size();
        block = std::move(next);
    }
    return block[state_a] == block[u.offset + state_b];
}

bool bisimilar_naive(const Lts& a, const Lts& b, std::size_t state_a, std::size_t state_b) {
    Union u = make_union(a, b);
    std::vector<std::vector<bool>> rel(u.n, std::vector<bool>(u.n, true));

    auto transfer = [&](std::size_t s1, std::size_t s2) {
        for (const auto& [act, dst] : u.out[s1]) {
            bool matched = false;
            for (const auto& [act2, dst2] : u.out[s2])
                if (act2 == act && rel[dst][dst2]) {
                    matched = true;
                    break;
                }
            if (!matched) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s1 = 0; s1 < u.n; ++s1)
            for (std::size_t s2 = 0; s2 < u.n; ++s2) {
                if (!rel[s1][s2]) continue;
                if (!transfer(s1, s2) || !transfer(s2, s1)) {
                    rel[s1][s2] = false;
                    changed = true;
                }
            }
    }
    return rel[state_a][u.offset + state_b];
}

namespace {

bool iso_by_keys(const Lts& a, const Lts& b) {
    std::set<std::string> ka(a.state_keys.begin(), a.state_keys.end());
    std::set<std::string> kb(b.state_keys.begin(), b.state_keys.end());
    if (ka != kb) return false;
    if (a.state_keys[a.initial] != b.state_keys[b.initial]) return false;
    auto edge_set = [](const Lts& l) {
        std::set<std::tuple<std::string, std::string, std::string>> es;
        for (const auto& [src, act, dst] : l.edges)
            es.insert({l.state_keys[src], l.actions[act], l.state_keys[dst]});
        return es;
    };
    return edge_set(a) == edge_set(b);
}

bool iso_general(const Lts& a, const Lts& b) {
    std::size_t n = a.state_keys.size();
    if (n != b.state_keys.size() || a.edges.size() != b.edges.size()) return false;

    std::map<std::string, std::size_t> action_ids;
    auto act_id = [&](const std::string& s) {
        auto it = action_ids.find(s);
        if (it != action_ids.end()) return it->second;
        std::size_t id = action_ids.size();
        action_ids.emplace(s, id);
        return id;
    };
    auto adjacency = [&](const Lts& l) {
        std::vector<std::set<std::pair<std::size_t, std::size_t>>> out(l.state_keys.size());
        for (const auto& [src, act, dst] : l.edges) out[src].insert({act_id(l.actions[act]), dst});
        return out;
    };
    auto oa = adjacency(a);
    auto ob = adjacency(b);

    std::vector<std::size_t> map_ab(n, SIZE_MAX), map_ba(n, SIZE_MAX);

    // Map states in order; check edges among already-mapped states.
    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (map_ba[j] != SIZE_MAX) continue;
            if ((i == a.initial) != (j == b.initial)) continue;
            map_ab[i] = j;
            map_ba[j] = i;
            bool ok = true;
            for (std::size_t s = 0; s <= i && ok; ++s) {
                for (const auto& [act, dst] : oa[s]) {
                    if (dst > i || map_ab[s] == SIZE_MAX) continue;
                    if (!ob[map_ab[s]].count({act, map_ab[dst]})) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
                for (const auto& [act, dst] : ob[map_ab[s]]) {
                    if (map_ba[dst] == SIZE_MAX || map_ba[dst] > i) continue;
                    if (!oa[s].count({act, map_ba[dst]})) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok && assign(i + 1)) return true;
            map_ab[i] = SIZE_MAX;
            map_ba[j] = SIZE_MAX;
        }
        return false;
    };
    return assign(0);
}

}  // namespace

bool reachable_isomorphic(const Lts& a, const Lts& b, IsoMode mode) {
    if (mode == IsoMode::StateKeys) return iso_by_keys(a, b);
    return iso_general(a, b);
}

}  // namespace cpn

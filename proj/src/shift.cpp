#include "sofic/shift.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace sofic {

namespace {

bool contains_subword(const Word& w, const Word& sub) {
    if (sub.empty() || sub.size() > w.size())
        return sub.empty();
    for (std::size_t i = 0; i + sub.size() <= w.size(); ++i) {
        bool hit = true;
        for (std::size_t t = 0; t < sub.size() && hit; ++t)
            hit = w[i + t] == sub[t];
        if (hit)
            return true;
    }
    return false;
}

// Adjacency view of a labeled graph, plus iterative pruning of states that
// cannot sit on a bi-infinite path.
struct Adjacency {
    int n = 0;
    std::size_t nsym = 0;
    // [state][sym] -> sorted targets
    std::vector<std::vector<std::vector<int>>> out;

    static Adjacency of(const LabeledGraph& g) {
        Adjacency a;
        a.n = static_cast<int>(g.states.size());
        a.nsym = g.alphabet.size();
        a.out.assign(a.n, std::vector<std::vector<int>>(a.nsym));
        for (const auto& e : g.edges) {
            if (e.from < 0 || e.from >= a.n || e.to < 0 || e.to >= a.n ||
                e.label >= a.nsym)
                throw ParseError("edge out of range");
            a.out[e.from][e.label].push_back(e.to);
        }
        for (auto& per_state : a.out)
            for (auto& v : per_state) {
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
            }
        return a;
    }

    // Alive states after repeatedly dropping those with no incoming or no
    // outgoing edge.
    std::vector<bool> essential() const {
        std::vector<bool> alive(n, true);
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> indeg(n, 0), outdeg(n, 0);
            for (int q = 0; q < n; ++q) {
                if (!alive[q])
                    continue;
                for (const auto& targets : out[q])
                    for (int t : targets)
                        if (alive[t]) {
                            ++outdeg[q];
                            ++indeg[t];
                        }
            }
            for (int q = 0; q < n; ++q)
                if (alive[q] && (indeg[q] == 0 || outdeg[q] == 0)) {
                    alive[q] = false;
                    changed = true;
                }
        }
        return alive;
    }
};

// Partial deterministic automaton over the same alphabet; -1 = undefined.
struct Dfa {
    std::size_t nsym = 0;
    std::vector<std::vector<int>> delta;

    int size() const { return static_cast<int>(delta.size()); }

    Dfa trimmed(std::vector<int>* old_to_new = nullptr) const {
        std::vector<bool> alive(size(), true);
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> indeg(size(), 0), outdeg(size(), 0);
            for (int q = 0; q < size(); ++q) {
                if (!alive[q])
                    continue;
                for (std::size_t s = 0; s < nsym; ++s) {
                    int t = delta[q][s];
                    if (t >= 0 && alive[t]) {
                        ++outdeg[q];
                        ++indeg[t];
                    }
                }
            }
            for (int q = 0; q < size(); ++q)
                if (alive[q] && (indeg[q] == 0 || outdeg[q] == 0)) {
                    alive[q] = false;
                    changed = true;
                }
        }
        std::vector<int> remap(size(), -1);
        Dfa out;
        out.nsym = nsym;
        for (int q = 0; q < size(); ++q)
            if (alive[q]) {
                remap[q] = out.size();
                out.delta.emplace_back(nsym, -1);
            }
        for (int q = 0; q < size(); ++q) {
            if (!alive[q])
                continue;
            for (std::size_t s = 0; s < nsym; ++s) {
                int t = delta[q][s];
                out.delta[remap[q]][s] = (t >= 0 && alive[t]) ? remap[t] : -1;
            }
        }
        if (old_to_new)
            *old_to_new = remap;
        return out;
    }

    // Merge states with identical follower languages (Moore refinement; all
    // states accepting, transitions partial).
    Dfa follower_merged() const {
        std::vector<int> cls(size(), 0);
        int classes = size() > 0 ? 1 : 0;
        while (true) {
            std::map<std::vector<int>, int> sig_to_class;
            std::vector<int> next(size());
            for (int q = 0; q < size(); ++q) {
                std::vector<int> sig;
                sig.reserve(nsym + 1);
                sig.push_back(cls[q]);
                for (std::size_t s = 0; s < nsym; ++s) {
                    int t = delta[q][s];
                    sig.push_back(t >= 0 ? cls[t] : -1);
                }
                auto [it, inserted] = sig_to_class.emplace(sig, static_cast<int>(sig_to_class.size()));
                next[q] = it->second;
                (void)inserted;
            }
            int count = static_cast<int>(sig_to_class.size());
            if (count == classes) {
                cls = next;
                break;
            }
            classes = count;
            cls = next;
        }
        // Renumber classes by first occurrence for determinism.
        std::vector<int> order(classes, -1);
        int nxt = 0;
        for (int q = 0; q < size(); ++q)
            if (order[cls[q]] < 0)
                order[cls[q]] = nxt++;
        Dfa out;
        out.nsym = nsym;
        out.delta.assign(classes, std::vector<int>(nsym, -1));
        for (int q = 0; q < size(); ++q)
            for (std::size_t s = 0; s < nsym; ++s) {
                int t = delta[q][s];
                if (t >= 0)
                    out.delta[order[cls[q]]][s] = order[cls[t]];
            }
        return out;
    }

    StateSet advance(const StateSet& from, Sym s) const {
        StateSet to;
        for (int q : from) {
            int t = delta[q][s];
            if (t >= 0)
                to.push_back(t);
        }
        std::sort(to.begin(), to.end());
        to.erase(std::unique(to.begin(), to.end()), to.end());
        return to;
    }

    StateSet all() const {
        StateSet s(size());
        std::iota(s.begin(), s.end(), 0);
        return s;
    }
};

// Every word readable somewhere in `a` must be readable somewhere in `b`.
bool language_contained(const Dfa& a, const Dfa& b) {
    std::set<std::pair<int, StateSet>> seen;
    std::deque<std::pair<int, StateSet>> queue;
    for (int q = 0; q < a.size(); ++q) {
        auto key = std::make_pair(q, b.all());
        if (seen.insert(key).second)
            queue.push_back(key);
    }
    while (!queue.empty()) {
        auto [q, sb] = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < a.nsym; ++s) {
            int t = a.delta[q][s];
            if (t < 0)
                continue;
            StateSet nb = b.advance(sb, static_cast<Sym>(s));
            if (nb.empty())
                return false;
            auto key = std::make_pair(t, std::move(nb));
            if (seen.insert(key).second)
                queue.push_back(key);
        }
    }
    return true;
}

std::vector<int> scc_ids(const Dfa& d, int& count) {
    // Tarjan, iterative.
    int n = d.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    count = 0;
    struct Frame {
        int q;
        std::size_t sym;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.sym < d.nsym) {
                int t = d.delta[f.q][f.sym++];
                if (t < 0)
                    continue;
                if (index[t] < 0) {
                    index[t] = low[t] = next_index++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    frames.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.q] = std::min(low[f.q], index[t]);
                }
            } else {
                int q = f.q;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().q] = std::min(low[frames.back().q], low[q]);
                if (low[q] == index[q]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = count;
                        if (w == q)
                            break;
                    }
                    ++count;
                }
            }
        }
    }
    return comp;
}

int cycle_gcd(const Dfa& d) {
    int count = 0;
    auto comp = scc_ids(d, count);
    long g = 0;
    for (int c = 0; c < count; ++c) {
        int root = -1;
        for (int q = 0; q < d.size() && root < 0; ++q)
            if (comp[q] == c)
                root = q;
        // BFS levels within the component.
        std::vector<long> lvl(d.size(), -1);
        std::deque<int> queue{root};
        lvl[root] = 0;
        bool has_edge = false;
        while (!queue.empty()) {
            int q = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < d.nsym; ++s) {
                int t = d.delta[q][s];
                if (t < 0 || comp[t] != c)
                    continue;
                has_edge = true;
                if (lvl[t] < 0) {
                    lvl[t] = lvl[q] + 1;
                    queue.push_back(t);
                } else {
                    g = std::gcd(g, std::abs(lvl[q] + 1 - lvl[t]));
                }
            }
        }
        (void)has_edge;
    }
    return g == 0 ? 1 : static_cast<int>(g);
}

} // namespace

int SftSpec::step() const {
    std::size_t maxlen = 0;
    for (const auto& f : forbidden) {
        if (f.empty())
            throw ParseError("forbidden words must be nonempty");
        maxlen = std::max(maxlen, f.size());
    }
    return maxlen == 0 ? 0 : static_cast<int>(maxlen) - 1;
}

LabeledGraph compile_sft(const SftSpec& spec) {
    const int j = spec.step();
    const std::size_t nsym = spec.alphabet.size();

    // Allowed j-blocks, in lexicographic order.
    std::vector<Word> blocks;
    {
        Word cur;
        auto rec = [&](auto&& self) -> void {
            if (static_cast<int>(cur.size()) == j) {
                blocks.push_back(cur);
                return;
            }
            for (Sym s = 0; s < nsym; ++s) {
                cur.push_back(s);
                bool ok = true;
                for (const auto& f : spec.forbidden)
                    if (f.size() <= cur.size() && contains_subword(cur, f)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    self(self);
                cur.pop_back();
            }
        };
        rec(rec);
    }

    std::map<Word, int> id;
    for (const auto& b : blocks)
        id.emplace(b, static_cast<int>(id.size()));

    LabeledGraph g;
    g.alphabet = spec.alphabet;
    for (const auto& b : blocks)
        g.states.push_back(format_word(spec.alphabet, b));
    for (const auto& b : blocks) {
        for (Sym s = 0; s < nsym; ++s) {
            Word ext = b;
            ext.push_back(s);
            bool ok = true;
            for (const auto& f : spec.forbidden)
                if (contains_subword(ext, f)) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            Word suffix = ext.subword(ext.size() - j, j);
            g.edges.push_back({id.at(b), s, id.at(suffix)});
        }
    }

    // Prune to the essential part.
    auto adj = Adjacency::of(g);
    auto alive = adj.essential();
    std::vector<int> remap(g.states.size(), -1);
    LabeledGraph pruned;
    pruned.alphabet = spec.alphabet;
    for (std::size_t q = 0; q < g.states.size(); ++q)
        if (alive[q]) {
            remap[q] = static_cast<int>(pruned.states.size());
            pruned.states.push_back(g.states[q]);
        }
    for (const auto& e : g.edges)
        if (alive[e.from] && alive[e.to])
            pruned.edges.push_back({remap[e.from], e.label, remap[e.to]});
    if (pruned.states.empty())
        throw EmptyShiftError();
    std::sort(pruned.edges.begin(), pruned.edges.end());
    return pruned;
}

FischerCover FischerCover::build(const LabeledGraph& g) {
    FischerCover cover;
    cover.alphabet_ = g.alphabet;
    const std::size_t nsym = g.alphabet.size();

    auto adj = Adjacency::of(g);
    auto alive = adj.essential();
    std::vector<int> live;
    for (int q = 0; q < adj.n; ++q)
        if (alive[q])
            live.push_back(q);
    if (live.empty())
        throw EmptyShiftError();

    // Subset construction from the full essential state set.
    std::map<std::vector<int>, int> subset_id;
    std::vector<std::vector<int>> subsets;
    Dfa dfa;
    dfa.nsym = nsym;
    auto intern = [&](std::vector<int> s) {
        auto [it, inserted] = subset_id.emplace(std::move(s), static_cast<int>(subsets.size()));
        if (inserted) {
            subsets.push_back(it->first);
            dfa.delta.emplace_back(nsym, -1);
        }
        return it->second;
    };
    std::deque<int> queue{intern(live)};
    std::set<int> processed;
    while (!queue.empty()) {
        int sid = queue.front();
        queue.pop_front();
        if (!processed.insert(sid).second)
            continue;
        std::vector<int> subset = subsets[sid];
        for (std::size_t s = 0; s < nsym; ++s) {
            std::vector<int> next;
            for (int q : subset)
                for (int t : adj.out[q][s])
                    if (alive[t])
                        next.push_back(t);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (next.empty())
                continue;
            int tid = intern(std::move(next));
            dfa.delta[sid][s] = tid;
            if (!processed.count(tid))
                queue.push_back(tid);
        }
    }

    Dfa trimmed = dfa.trimmed();
    if (trimmed.size() == 0)
        throw EmptyShiftError();
    Dfa merged = trimmed.follower_merged().trimmed();
    if (merged.size() == 0)
        throw EmptyShiftError();

    // Contract the full state set; a singleton marks a synchronized state.
    Dfa final_dfa = merged;
    int focus = -1;
    {
        std::set<StateSet> seen;
        std::deque<StateSet> bfs{merged.all()};
        seen.insert(merged.all());
        while (!bfs.empty() && focus < 0) {
            StateSet cur = bfs.front();
            bfs.pop_front();
            if (cur.size() == 1) {
                focus = cur[0];
                break;
            }
            for (std::size_t s = 0; s < nsym; ++s) {
                StateSet nxt = merged.advance(cur, static_cast<Sym>(s));
                if (nxt.empty())
                    continue;
                if (seen.insert(nxt).second)
                    bfs.push_back(nxt);
            }
        }
    }
    int root = 0;
    if (focus >= 0) {
        // Subgraph reachable from the synchronized state.
        std::vector<bool> reach(merged.size(), false);
        std::deque<int> bfs{focus};
        reach[focus] = true;
        while (!bfs.empty()) {
            int q = bfs.front();
            bfs.pop_front();
            for (std::size_t s = 0; s < nsym; ++s) {
                int t = merged.delta[q][s];
                if (t >= 0 && !reach[t]) {
                    reach[t] = true;
                    bfs.push_back(t);
                }
            }
        }
        std::vector<int> remap(merged.size(), -1);
        Dfa sub;
        sub.nsym = nsym;
        for (int q = 0; q < merged.size(); ++q)
            if (reach[q]) {
                remap[q] = sub.size();
                sub.delta.emplace_back(nsym, -1);
            }
        for (int q = 0; q < merged.size(); ++q) {
            if (!reach[q])
                continue;
            for (std::size_t s = 0; s < nsym; ++s) {
                int t = merged.delta[q][s];
                if (t >= 0 && reach[t])
                    sub.delta[remap[q]][s] = remap[t];
                else if (t >= 0)
                    sub.delta[remap[q]][s] = -1;
            }
        }
        // Keep the subgraph only when it still presents the whole language.
        if (language_contained(merged, sub)) {
            final_dfa = sub;
            root = remap[focus];
        }
    }

    // Canonical rename: BFS from the root with symbols in alphabet order,
    // then any unreached states in construction order.
    {
        std::vector<int> order(final_dfa.size(), -1);
        int next = 0;
        std::deque<int> bfs{root};
        order[root] = next++;
        while (!bfs.empty()) {
            int q = bfs.front();
            bfs.pop_front();
            for (std::size_t s = 0; s < nsym; ++s) {
                int t = final_dfa.delta[q][s];
                if (t >= 0 && order[t] < 0) {
                    order[t] = next++;
                    bfs.push_back(t);
                }
            }
        }
        for (int q = 0; q < final_dfa.size(); ++q)
            if (order[q] < 0)
                order[q] = next++;
        cover.delta_.assign(final_dfa.size(), std::vector<int>(nsym, -1));
        for (int q = 0; q < final_dfa.size(); ++q)
            for (std::size_t s = 0; s < nsym; ++s) {
                int t = final_dfa.delta[q][s];
                cover.delta_[order[q]][s] = t >= 0 ? order[t] : -1;
            }
        cover.names_.resize(final_dfa.size());
        for (int q = 0; q < final_dfa.size(); ++q)
            cover.names_[q] = std::to_string(q);
    }

    // Transitivity and period.
    {
        Dfa d;
        d.nsym = nsym;
        d.delta = cover.delta_;
        int count = 0;
        auto comp = scc_ids(d, count);
        cover.irreducible_ = count == 1;
        cover.period_ = cycle_gcd(d);
    }
    return cover;
}

LabeledGraph FischerCover::graph() const {
    LabeledGraph g;
    g.alphabet = alphabet_;
    g.states = names_;
    for (int q = 0; q < state_count(); ++q)
        for (Sym s = 0; s < alphabet_.size(); ++s)
            if (delta_[q][s] >= 0)
                g.edges.push_back({q, s, delta_[q][s]});
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

StateSet FischerCover::all_states() const {
    StateSet s(state_count());
    std::iota(s.begin(), s.end(), 0);
    return s;
}

StateSet FischerCover::advance(const StateSet& from, const Word& w) const {
    StateSet cur = from;
    for (Sym s : w) {
        StateSet next;
        for (int q : cur) {
            int t = delta_[q][s];
            if (t >= 0)
                next.push_back(t);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        if (cur.empty())
            break;
    }
    return cur;
}

bool FischerCover::is_allowable(const Word& w) const {
    return !advance(all_states(), w).empty() || w.empty();
}

StateSet FischerCover::follower_states(const Word& w) const {
    StateSet t = advance(all_states(), w);
    if (t.empty() && !w.empty())
        throw NotAllowableError(format_word(alphabet_, w));
    return w.empty() ? all_states() : t;
}

bool FischerCover::is_synchronizing(const Word& w) const {
    if (!irreducible_)
        throw NotTransitiveError();
    return follower_states(w).size() == 1;
}

Word FischerCover::extend_to_synchronizing(const Word& w) const {
    if (!irreducible_)
        throw NotTransitiveError();
    StateSet start = follower_states(w);
    if (start.size() == 1)
        return w;
    std::set<StateSet> seen{start};
    std::deque<std::pair<StateSet, Word>> queue{{start, Word{}}};
    while (!queue.empty()) {
        auto [cur, u] = queue.front();
        queue.pop_front();
        for (Sym s = 0; s < alphabet_.size(); ++s) {
            StateSet next = advance(cur, Word({s}));
            if (next.empty())
                continue;
            Word ext = u;
            ext.push_back(s);
            if (next.size() == 1)
                return w + ext;
            if (seen.insert(next).second)
                queue.emplace_back(next, ext);
        }
    }
    throw SearchExhaustedError(static_cast<long>(seen.size()), "synchronizing extension");
}

Word FischerCover::connector(const Word& u, const Word& w, const ConnectorSpec& spec) const {
    StateSet start = u.empty() ? all_states() : advance(all_states(), u);
    if (start.empty())
        throw NotAllowableError(format_word(alphabet_, u));
    if (!is_allowable(w))
        throw NotAllowableError(format_word(alphabet_, w));

    const int p = period_;
    const long L = spec.exact_length ? *spec.exact_length : spec.min_length;
    const long bound = spec.exact_length
                           ? *spec.exact_length
                           : static_cast<long>(state_count()) *
                                     (p + static_cast<long>(std::max(u.size(), w.size()))) +
                                 L;

    auto accepts_length = [&](long len) {
        if (spec.exact_length)
            return len == *spec.exact_length;
        if (len < spec.min_length)
            return false;
        if (spec.residue)
            return static_cast<int>(len % p) == (*spec.residue % p + p) % p;
        return true;
    };
    auto reaches_w = [&](const StateSet& s) { return !advance(s, w).empty(); };

    // Level-by-level search; below min_length every (subset, length) pair is
    // distinct, above it lengths only matter modulo the period.
    std::set<std::pair<StateSet, long>> seen;
    std::vector<std::pair<StateSet, Word>> level{{start, Word{}}};
    for (long len = 0; len <= bound; ++len) {
        for (const auto& [subset, v] : level)
            if (accepts_length(len) && reaches_w(subset))
                return v;
        if (len == bound)
            break;
        std::vector<std::pair<StateSet, Word>> next_level;
        std::set<StateSet> in_level;
        for (const auto& [subset, v] : level) {
            for (Sym s = 0; s < alphabet_.size(); ++s) {
                StateSet next = advance(subset, Word({s}));
                if (next.empty())
                    continue;
                long nl = len + 1;
                long key_len = nl < L ? nl : L + ((nl - L) % p);
                auto key = std::make_pair(next, key_len);
                if (nl >= L && !seen.insert(key).second)
                    continue;
                if (nl < L) {
                    if (in_level.count(next))
                        continue;
                }
                if (nl < L)
                    in_level.insert(next);
                Word ext = v;
                ext.push_back(s);
                next_level.emplace_back(std::move(next), std::move(ext));
            }
        }
        level = std::move(next_level);
        if (level.empty())
            break;
    }
    throw NoConnectorError(bound);
}

void FischerCover::for_each_word(int n, const std::function<bool(const Word&)>& fn) const {
    Word cur;
    bool stop = false;
    auto rec = [&](auto&& self, const StateSet& frontier) -> void {
        if (stop)
            return;
        if (static_cast<int>(cur.size()) == n) {
            if (!fn(cur))
                stop = true;
            return;
        }
        for (Sym s = 0; s < alphabet_.size() && !stop; ++s) {
            StateSet next;
            for (int q : frontier) {
                int t = delta_[q][s];
                if (t >= 0)
                    next.push_back(t);
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            if (next.empty())
                continue;
            cur.push_back(s);
            self(self, next);
            cur.pop_back();
        }
    };
    if (n >= 0)
        rec(rec, all_states());
}

std::vector<Word> FischerCover::enumerate_words(int n) const {
    std::vector<Word> out;
    for_each_word(n, [&](const Word& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

std::uint64_t FischerCover::word_count(int n) const {
    if (n < 0)
        return 0;
    std::map<StateSet, std::uint64_t> cur{{all_states(), 1}};
    // Count paths in the subset automaton; saturate on overflow.
    constexpr std::uint64_t kCap = std::uint64_t(1) << 62;
    for (int i = 0; i < n; ++i) {
        std::map<StateSet, std::uint64_t> next;
        for (const auto& [subset, cnt] : cur) {
            for (Sym s = 0; s < alphabet_.size(); ++s) {
                StateSet t = advance(subset, Word({s}));
                if (t.empty())
                    continue;
                auto& slot = next[t];
                slot = std::min(kCap, slot + cnt);
            }
        }
        cur = std::move(next);
        if (cur.empty())
            return 0;
    }
    std::uint64_t total = 0;
    for (const auto& [subset, cnt] : cur)
        total = std::min(kCap, total + cnt);
    return total;
}

StateSet FischerCover::stabilized_followers(const Word& w) const {
    StateSet cur = advance(all_states(), w);
    while (true) {
        StateSet next = advance(cur, w);
        if (next == cur)
            return cur;
        cur = std::move(next);
        if (cur.empty())
            return cur;
    }
}

StateSet FischerCover::infinite_right_set(const Word& w) const {
    std::vector<bool> in(state_count(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = 0; q < state_count(); ++q) {
            if (!in[q])
                continue;
            int cur = q;
            bool ok = true;
            for (Sym s : w) {
                cur = delta_[cur][s];
                if (cur < 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok || !in[cur]) {
                in[q] = false;
                changed = true;
            }
        }
    }
    StateSet out;
    for (int q = 0; q < state_count(); ++q)
        if (in[q])
            out.push_back(q);
    return out;
}

} // namespace sofic

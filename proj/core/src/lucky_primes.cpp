#include "lucky/lucky_primes.hpp"

#include <algorithm>

#include "lucky/ints.hpp"
#include "lucky/primality.hpp"

namespace lucky {

bool is_lucky_prime(const LuckyTable& table, std::uint64_t n) {
    if (!is_prime(n)) return false;
    if (n > table.limit()) throw_needs_larger_table(n, "lucky prime query");
    return table.contains(n);
}

namespace {

MixedExpr leaf(MixedExpr::Kind kind, std::uint64_t value) {
    MixedExpr e;
    e.kind = kind;
    e.value = value;
    return e;
}

// Chain with a terminal 2 expanded back to 2*1; the alternation displays
// chains in this long form.
std::vector<std::uint64_t> expanded_chain(const LuckyTable& table, std::uint64_t n) {
    FactorChain chain = factor(table, n);
    if (chain.elements.back() == 2) chain.elements.push_back(1);
    return chain.elements;
}

class MixedBuilder {
  public:
    MixedBuilder(const LuckyTable& table, const MixedOptions& options)
        : table_(table), options_(options) {}

    // via_chain: split n through its chain; otherwise through its prime-power
    // factorization. The alternation flips the flag at each level.
    MixedExpr build(std::uint64_t n, bool via_chain, std::uint32_t depth) {
        if (depth > options_.depth_cap)
            throw Error(ErrorCode::non_terminating,
                        "mixed factorization exceeded depth cap " +
                            std::to_string(options_.depth_cap));
        if (std::find(active_.begin(), active_.end(), n) != active_.end())
            throw Error(ErrorCode::non_terminating,
                        "mixed factorization cycled on " + std::to_string(n));
        if (n == 1) return leaf(MixedExpr::Kind::one, 1);
        if (n == 2) return leaf(MixedExpr::Kind::two, 2);
        if (is_lucky_prime(table_, n)) return leaf(MixedExpr::Kind::lucky_prime, n);
        active_.push_back(n);
        MixedExpr result = via_chain ? build_chain(n, depth) : build_product(n, depth);
        active_.pop_back();
        return result;
    }

  private:
    MixedExpr build_chain(std::uint64_t n, std::uint32_t depth) {
        std::vector<std::uint64_t> elements = expanded_chain(table_, n);
        if (elements.size() == 1) // composite survivor: the flip side splits it
            return build_product(elements[0], depth + 1);
        MixedExpr e;
        e.kind = MixedExpr::Kind::star_chain;
        e.value = n;
        e.chain.reserve(elements.size());
        for (std::uint64_t el : elements) e.chain.push_back(build(el, false, depth + 1));
        return e;
    }

    MixedExpr build_product(std::uint64_t n, std::uint32_t depth) {
        if (is_prime(n)) // prime that is not lucky: only its chain splits it
            return build_chain(n, depth);
        auto factors = prime_factorize(n);
        if (factors.size() == 1 && factors[0].second == 1)
            return build(factors[0].first, true, depth + 1);
        MixedExpr e;
        e.kind = MixedExpr::Kind::product;
        e.value = n;
        e.factors.reserve(factors.size());
        for (auto [p, a] : factors) e.factors.emplace_back(build(p, true, depth + 1), a);
        return e;
    }

    const LuckyTable& table_;
    const MixedOptions& options_;
    std::vector<std::uint64_t> active_;
};

} // namespace

MixedExpr mixed_factor(const LuckyTable& table, std::uint64_t n, MixedStart start,
                       const MixedOptions& options) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "mixed_factor requires n >= 1");
    if (n > table.limit()) throw_needs_larger_table(n, "mixed_factor");
    MixedBuilder builder(table, options);
    return builder.build(n, start == MixedStart::lucky_first, 0);
}

std::uint64_t eval_mixed(const LuckyTable& table, const MixedExpr& expr) {
    switch (expr.kind) {
        case MixedExpr::Kind::lucky_prime:
        case MixedExpr::Kind::one:
        case MixedExpr::Kind::two: return expr.value;
        case MixedExpr::Kind::product: {
            std::uint64_t r = 1;
            for (const auto& [term, exp] : expr.factors)
                r = checked_mul(r, checked_pow(eval_mixed(table, term), exp));
            return r;
        }
        case MixedExpr::Kind::star_chain: {
            std::uint64_t v = eval_mixed(table, expr.chain.back());
            for (std::size_t k = expr.chain.size() - 1; k-- > 0;)
                v = star(table, eval_mixed(table, expr.chain[k]), v);
            return v;
        }
    }
    throw Error(ErrorCode::invalid_argument, "malformed expression node");
}

namespace {

bool is_leaf(const MixedExpr& e) {
    return e.kind == MixedExpr::Kind::lucky_prime || e.kind == MixedExpr::Kind::one ||
           e.kind == MixedExpr::Kind::two;
}

std::string render_chain_tail(const std::vector<MixedExpr>& chain, std::size_t from);

std::string render_node(const MixedExpr& e, bool parenthesize_composite) {
    std::string s;
    switch (e.kind) {
        case MixedExpr::Kind::lucky_prime:
        case MixedExpr::Kind::one:
        case MixedExpr::Kind::two: return std::to_string(e.value);
        case MixedExpr::Kind::product: {
            for (std::size_t i = 0; i < e.factors.size(); ++i) {
                const auto& [term, exp] = e.factors[i];
                bool wrap = !is_leaf(term) || i > 0;
                std::string t = render_node(term, false);
                if (wrap) t = "(" + t + ")";
                if (exp > 1) t += "^" + std::to_string(exp);
                s += t;
            }
            break;
        }
        case MixedExpr::Kind::star_chain: s = render_chain_tail(e.chain, 0); break;
    }
    if (parenthesize_composite) s = "(" + s + ")";
    return s;
}

// l1*(l2*(...*lk)...) with explicit parentheses
std::string render_chain_tail(const std::vector<MixedExpr>& chain, std::size_t from) {
    std::string head = render_node(chain[from], !is_leaf(chain[from]));
    if (from + 1 == chain.size()) return head;
    if (from + 2 == chain.size()) return head + "*" + render_node(chain[from + 1], !is_leaf(chain[from + 1]));
    return head + "*(" + render_chain_tail(chain, from + 1) + ")";
}

} // namespace

std::string render_mixed(const MixedExpr& expr) { return render_node(expr, false); }

// ---------------------------------------------------------------------------
// Fractional order

OrderCalculator::OrderCalculator(const LuckyTable& table, OrderOptions options)
    : table_(table), options_(options) {}

OrderValue ord(const LuckyTable& table, std::uint64_t n, OrderOptions options) {
    OrderCalculator calc(table, options);
    return calc.ord(n);
}

OrderValue OrderCalculator::ord(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "ord requires n >= 1");
    if (n > table_.limit()) throw_needs_larger_table(n, "ord");
    if (!is_prime(n) && !table_.contains(n))
        throw Error(ErrorCode::invalid_argument,
                    "ord is defined only for primes and survivors, not " + std::to_string(n));
    std::vector<std::uint64_t> active;
    return OrderValue{recurse(n, 0, active)};
}

std::optional<std::uint64_t> OrderCalculator::recurse(std::uint64_t n, std::uint32_t depth,
                                                      std::vector<std::uint64_t>& active) {
    if (options_.use_cache) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
    }
    if (depth > options_.depth_cap) return std::nullopt;
    if (std::find(active.begin(), active.end(), n) != active.end()) return std::nullopt;

    bool lucky_member = table_.contains(n);
    bool prime = is_prime(n);
    std::optional<std::uint64_t> result;
    if (prime && lucky_member) {
        result = 1;
    } else {
        active.push_back(n);
        std::uint64_t deepest = 0;
        bool any = false, broken = false;
        if (prime) {
            // chain elements, with the order-neutral terminators 1 and 2 skipped
            for (std::uint64_t el : factor(table_, n).elements) {
                if (el == 1 || el == 2) continue;
                any = true;
                auto sub = recurse(el, depth + 1, active);
                if (!sub) { broken = true; break; }
                deepest = std::max(deepest, *sub);
            }
        } else if (n > 1) { // composite survivor
            for (auto [p, e] : prime_factorize(n)) {
                (void)e;
                any = true;
                auto sub = recurse(p, depth + 1, active);
                if (!sub) { broken = true; break; }
                deepest = std::max(deepest, *sub);
            }
        }
        active.pop_back();
        if (any && !broken) result = deepest + 1;
    }
    if (options_.use_cache) cache_.emplace(n, result);
    return result;
}

std::vector<std::uint64_t> enumerate_order(const LuckyTable& table, std::uint64_t limit,
                                           std::uint64_t k) {
    if (k == 0) throw Error(ErrorCode::invalid_argument, "order denominator must be >= 1");
    if (limit > table.limit()) throw_needs_larger_table(limit, "enumerate_order");
    OrderCalculator calc(table);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 1; v <= limit; ++v) {
        if (!is_prime(v) && !table.contains(v)) continue;
        OrderValue o = calc.ord(v);
        if (o.defined() && *o.reciprocal == k) out.push_back(v);
    }
    return out;
}

} // namespace lucky

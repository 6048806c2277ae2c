#include "fnops/operad.hpp"

#include <algorithm>
#include <sstream>

namespace fnops {

Term Term::leaf(int label) {
    if (label < 1) throw validation_error("leaf labels are positive");
    Term t;
    t.leaf_label_ = label;
    return t;
}

Term Term::vertex(LevelTree deco, std::vector<Term> items) {
    if (deco.is_terminal()) {
        // the terminal tree represents the identity
        if (items.size() != 1) throw validation_error("identity vertex takes one item");
        return items[0];
    }
    if (!deco.is_reduced()) throw validation_error("decorations must be reduced");
    if (static_cast<int>(items.size()) != deco.tips())
        throw validation_error("item count does not match decoration arity");
    Term t;
    t.leaf_label_ = 0;
    t.deco_ = std::make_shared<const LevelTree>(std::move(deco));
    t.subs_ = std::move(items);
    return t;
}

Term Term::generator(const LabeledTree& t) {
    std::vector<Term> items;
    items.reserve(t.arity());
    for (int i = 1; i <= t.arity(); ++i) items.push_back(Term::leaf(t.labels()[i]));
    return vertex(t.shape(), std::move(items));
}

int Term::arity() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& s : subs_) n += s.arity();
    return n;
}

int Term::degree() const {
    if (is_leaf()) return 0;
    int d = deco_->dim();
    for (const auto& s : subs_) d += s.degree();
    return d;
}

int Term::vertex_count() const {
    if (is_leaf()) return 0;
    int c = 1;
    for (const auto& s : subs_) c += s.vertex_count();
    return c;
}

static void collect_labels(const Term& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.leaf_label());
        return;
    }
    for (const auto& s : t.items()) collect_labels(s, out);
}

std::vector<int> Term::leaf_labels() const {
    std::vector<int> out;
    collect_labels(*this, out);
    return out;
}

Term Term::unlabeled_normal_form() const {
    return act(leaf_perm().inverse());
}

Term Term::act(const Perm& sigma) const {
    if (is_leaf()) return leaf(sigma[leaf_label_]);
    std::vector<Term> items;
    items.reserve(subs_.size());
    for (const auto& s : subs_) items.push_back(s.act(sigma));
    Term t;
    t.leaf_label_ = 0;
    t.deco_ = deco_;
    t.subs_ = std::move(items);
    return t;
}

static Term shift_labels(const Term& t, int from, int offset) {
    if (t.is_leaf()) {
        int l = t.leaf_label();
        return Term::leaf(l >= from ? l + offset : l);
    }
    std::vector<Term> items;
    items.reserve(t.items().size());
    for (const auto& s : t.items()) items.push_back(shift_labels(s, from, offset));
    return Term::vertex(t.deco(), std::move(items));
}

static Term substitute_leaf(const Term& t, int label, const Term& repl) {
    if (t.is_leaf())
        return t.leaf_label() == label ? repl : t;
    std::vector<Term> items;
    items.reserve(t.items().size());
    for (const auto& s : t.items()) items.push_back(substitute_leaf(s, label, repl));
    return Term::vertex(t.deco(), std::move(items));
}

Term Term::compose_at(int i, const Term& b) const {
    int n = arity(), m = b.arity();
    if (i < 1 || i > n) throw validation_error("composition position out of range");
    Term a = shift_labels(*this, i + 1, m - 1);
    Term bb = shift_labels(b, 1, i - 1);
    return substitute_leaf(a, i, bb);
}

bool Term::is_single_generator() const {
    if (is_leaf()) return false;
    for (const auto& s : subs_)
        if (!s.is_leaf()) return false;
    return true;
}

LabeledTree Term::as_labeled_tree() const {
    if (!is_single_generator()) throw validation_error("term is not a single generator");
    return LabeledTree(*deco_, Perm(leaf_labels()));
}

std::string Term::extended_barcode() const {
    if (is_leaf()) return std::to_string(leaf_label_);
    std::ostringstream os;
    os << '[';
    auto g = deco_->gaps();
    for (size_t i = 0; i < subs_.size(); ++i) {
        if (i > 0)
            for (int b = 0; b < g[i - 1]; ++b) os << '|';
        os << subs_[i].extended_barcode();
    }
    os << ']';
    return os.str();
}

namespace {

struct ExtParser {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw validation_error("extended barcode parse error at position " +
                               std::to_string(pos) + ": " + why);
    }

    Term item() {
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == '[') return term();
        if (!isdigit(static_cast<unsigned char>(s[pos]))) fail("expected label or '['");
        int v = 0;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return Term::leaf(v);
    }

    Term term() {
        if (s[pos] != '[') fail("expected '['");
        ++pos;
        std::vector<Term> items;
        std::vector<int> gaps;
        items.push_back(item());
        while (pos < s.size() && s[pos] == '|') {
            int bars = 0;
            while (pos < s.size() && s[pos] == '|') { ++bars; ++pos; }
            gaps.push_back(bars);
            items.push_back(item());
        }
        if (pos >= s.size() || s[pos] != ']') fail("expected ']'");
        ++pos;
        return Term::vertex(LevelTree::from_gaps(gaps), std::move(items));
    }
};

} // namespace

Term Term::parse_extended_barcode(const std::string& text) {
    ExtParser p{text};
    if (text.empty()) p.fail("empty input");
    Term t = p.term();
    if (p.pos != text.size()) p.fail("trailing input");
    auto labels = t.leaf_labels();
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i) + 1)
            p.fail("leaf labels are not a permutation of 1..n");
    return t;
}

bool Term::operator==(const Term& o) const {
    if (leaf_label_ != o.leaf_label_) return false;
    if (is_leaf()) return true;
    return *deco_ == *o.deco_ && subs_ == o.subs_;
}

bool Term::operator<(const Term& o) const {
    return extended_barcode() < o.extended_barcode();
}

void FormalSum::add(const Term& t, long long c) {
    if (ring_ == Ring::F2) c = ((c % 2) + 2) % 2;
    if (c == 0) return;
    std::string key = t.extended_barcode();
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::make_pair(t, c));
        return;
    }
    long long v = it->second.second + c;
    if (ring_ == Ring::F2) v = ((v % 2) + 2) % 2;
    if (v == 0) terms_.erase(it);
    else it->second.second = v;
}

void FormalSum::add(const FormalSum& other, long long scale) {
    for (const auto& [k, tc] : other.entries()) add(tc.first, tc.second * scale);
}

long long FormalSum::coeff(const Term& t) const { return coeff(t.extended_barcode()); }

long long FormalSum::coeff(const std::string& code) const {
    auto it = terms_.find(code);
    return it == terms_.end() ? 0 : it->second.second;
}

FormalSum FormalSum::to_f2() const {
    FormalSum out(Ring::F2);
    for (const auto& [k, tc] : terms_) out.add(tc.first, tc.second);
    return out;
}

FormalSum FormalSum::act(const Perm& sigma) const {
    FormalSum out(ring_);
    for (const auto& [k, tc] : terms_) out.add(tc.first.act(sigma), tc.second);
    return out;
}

std::string FormalSum::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, tc] : terms_) {
        long long c = tc.second;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        long long a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << k;
    }
    return os.str();
}

bool FormalSum::operator==(const FormalSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [k, tc] : terms_) {
        auto it = o.terms_.find(k);
        if (it == o.terms_.end() || it->second.second != tc.second) return false;
    }
    return true;
}

} // namespace fnops

#include "weierkit/family.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "weierkit/errors.hpp"

namespace weierkit {

namespace {

constexpr std::pair<Kind, const char*> kind_names[] = {
    {Kind::rational, "rational"},
    {Kind::elliptic, "elliptic"},
    {Kind::twisted, "twisted"},
    {Kind::jacobi, "jacobi"},
    {Kind::jacobi_degenerate, "jacobi-degenerate"},
    {Kind::multiparameter, "multiparameter"},
    {Kind::genus2, "genus2"},
    {Kind::genusg, "genusg"},
};

} // namespace

std::string to_string(Kind kind)
{
    for (const auto& [k, name] : kind_names)
        if (k == kind)
            return name;
    return "unknown";
}

Kind kind_from_string(const std::string& name)
{
    for (const auto& [k, n] : kind_names)
        if (name == n)
            return k;
    if (name == "jacobi_degenerate")
        return Kind::jacobi_degenerate;
    throw DomainError("unknown family kind '" + name + "'");
}

std::string to_string(const ModeLabel& label)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i)
            os << ' ';
        os << '(' << label[i].k << ',' << label[i].l << ',' << label[i].m << ')';
    }
    os << ']';
    return os.str();
}

Action Family::act(const OperatorIndex& op, std::span<const Complex>, const ModeLabel& label) const
{
    Action a{label, 1.0};
    a.label.push_back(op);
    return a;
}

Complex Family::guarded_evaluate(std::span<const Complex> points, const ModeLabel& label) const
{
    if (concurrency_safe())
        return evaluate(points, label);
    std::lock_guard lock(mutex_);
    return evaluate(points, label);
}

Action Family::guarded_act(const OperatorIndex& op, std::span<const Complex> points, const ModeLabel& label) const
{
    if (concurrency_safe())
        return act(op, points, label);
    std::lock_guard lock(mutex_);
    return act(op, points, label);
}

TableFamily::TableFamily(Kind kind, int n_max, std::vector<Entry> entries)
    : kind_(kind), n_max_(n_max), entries_(std::move(entries))
{
    if (n_max_ < 0)
        throw DomainError("n_max must be non-negative");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        index_[entries_[i].label].push_back(i);
        for (const auto& op : entries_[i].label)
            mode_bound_ = std::max(mode_bound_.value_or(0), op.m);
    }
}

Complex TableFamily::evaluate(std::span<const Complex> points, const ModeLabel& label) const
{
    if (static_cast<int>(points.size()) > n_max_)
        throw DomainError("table family holds at most " + std::to_string(n_max_) + " points");
    auto it = index_.find(label);
    if (it == index_.end())
        return 0.0;
    Complex sum = 0.0;
    for (std::size_t i : it->second) {
        const auto& e = entries_[i];
        if (!e.n || *e.n == static_cast<int>(points.size()))
            sum += e.value;
    }
    return sum;
}

TableFamily TableFamily::from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("family file: ") + e.what());
    }
    try {
        const Kind kind = kind_from_string(j.at("kind").get<std::string>());
        const int n_max = j.at("n_max").get<int>();
        std::vector<Entry> entries;
        for (const auto& e : j.at("entries")) {
            const auto flat = e.at("labels").get<std::vector<int>>();
            if (flat.size() % 3 != 0)
                throw DomainError("family file: labels must come in (k, l, m) triples");
            Entry entry;
            for (std::size_t i = 0; i < flat.size(); i += 3)
                entry.label.push_back({flat[i], flat[i + 1], flat[i + 2]});
            const auto v = e.at("value").get<std::vector<double>>();
            if (v.size() != 2)
                throw DomainError("family file: value must be [re, im]");
            entry.value = {v[0], v[1]};
            if (e.contains("n"))
                entry.n = e.at("n").get<int>();
            entries.push_back(std::move(entry));
        }
        return TableFamily(kind, n_max, std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("family file: ") + e.what());
    }
}

TableFamily TableFamily::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open family file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

FunctionFamily::FunctionFamily(Kind kind, Fn fn, std::optional<int> mode_bound, bool concurrency_safe)
    : kind_(kind), fn_(std::move(fn)), bound_(mode_bound), safe_(concurrency_safe)
{
}

Complex FunctionFamily::evaluate(std::span<const Complex> points, const ModeLabel& label) const
{
    return fn_(points, label);
}

LinearCombinationFamily::LinearCombinationFamily(std::vector<std::pair<Complex, std::shared_ptr<const Family>>> terms)
    : terms_(std::move(terms))
{
    if (terms_.empty())
        throw DomainError("linear combination needs at least one family");
    kind_ = terms_.front().second->kind();
    for (const auto& [c, f] : terms_)
        if (f->kind() != kind_)
            throw DomainError("linear combination of families of different kinds");
}

Complex LinearCombinationFamily::evaluate(std::span<const Complex> points, const ModeLabel& label) const
{
    Complex sum = 0.0;
    for (const auto& [c, f] : terms_)
        sum += c * f->guarded_evaluate(points, label);
    return sum;
}

std::optional<int> LinearCombinationFamily::mode_bound() const
{
    int bound = 0;
    for (const auto& [c, f] : terms_) {
        auto b = f->mode_bound();
        if (!b)
            return std::nullopt;
        bound = std::max(bound, *b);
    }
    return bound;
}

bool LinearCombinationFamily::concurrency_safe() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second->concurrency_safe(); });
}

} // namespace weierkit

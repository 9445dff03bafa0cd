#include "heron/problem_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace heron {

const char* to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::MissingHeader: return "missing-header";
        case ParseErrorCode::UnsupportedVersion: return "unsupported-version";
        case ParseErrorCode::MissingDimension: return "missing-dimension";
        case ParseErrorCode::MalformedNumber: return "malformed-number";
        case ParseErrorCode::UnknownSetKind: return "unknown-set-kind";
        case ParseErrorCode::UnknownKey: return "unknown-key";
        case ParseErrorCode::DuplicateKey: return "duplicate-key";
        case ParseErrorCode::MissingKey: return "missing-key";
        case ParseErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ParseErrorCode::NonpositiveWeight: return "nonpositive-weight";
        case ParseErrorCode::NonpositiveRadius: return "nonpositive-radius";
        case ParseErrorCode::NonpositiveScale: return "nonpositive-scale";
        case ParseErrorCode::BoxBoundsOrder: return "box-bounds-order";
        case ParseErrorCode::ZeroNormal: return "zero-normal";
        case ParseErrorCode::MissingConstraint: return "missing-constraint";
        case ParseErrorCode::NoTargets: return "no-targets";
        case ParseErrorCode::UnknownMethod: return "unknown-method";
        case ParseErrorCode::InvalidValue: return "invalid-value";
        case ParseErrorCode::StrayLine: return "stray-line";
    }
    return "unknown";
}

ParseError::ParseError(ParseErrorCode code, int line, int column, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + to_string(code) + ": " + detail),
      code_(code),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

struct Line {
    int number = 0;  // 1-based
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                              : eol - pos);
        ++number;
        if (const size_t hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        Line line{number, {}};
        size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            const size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            line.tokens.push_back(Token{std::string(raw.substr(start, i - start)),
                                        static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return lines;
}

double parse_double(const Token& token, int line) {
    double value = 0.0;
    const char* begin = token.text.data();
    const char* end = begin + token.text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(ParseErrorCode::MalformedNumber, line, token.column,
                         "'" + token.text + "' is not a number");
    }
    return value;
}

int parse_int(const Token& token, int line) {
    int value = 0;
    const char* begin = token.text.data();
    const char* end = begin + token.text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(ParseErrorCode::MalformedNumber, line, token.column,
                         "'" + token.text + "' is not an integer");
    }
    return value;
}

struct KeyEntry {
    std::vector<Token> values;
    int line = 0;
    int column = 0;
};

struct Stanza {
    std::string type;  // "constraint", "target", "solver"
    std::string kind;  // set kind for constraint/target
    int line = 0;
    int column = 0;
    std::map<std::string, KeyEntry> keys;
    std::vector<std::string> key_order;
};

class StanzaReader {
public:
    StanzaReader(const Stanza& stanza, Index dim) : stanza_(stanza), dim_(dim) {}

    Vector vector(const std::string& key) {
        const KeyEntry& entry = require(key);
        if (static_cast<Index>(entry.values.size()) != dim_) {
            throw ParseError(ParseErrorCode::DimensionMismatch, entry.line, entry.column,
                             "'" + key + "' needs " + std::to_string(dim_) + " coordinates, got " +
                                 std::to_string(entry.values.size()));
        }
        Vector v(dim_);
        for (Index i = 0; i < dim_; ++i) {
            v[i] = parse_double(entry.values[static_cast<size_t>(i)], entry.line);
        }
        return v;
    }

    double scalar(const std::string& key) {
        const KeyEntry& entry = require(key);
        if (entry.values.size() != 1) {
            throw ParseError(ParseErrorCode::InvalidValue, entry.line, entry.column,
                             "'" + key + "' takes one value");
        }
        return parse_double(entry.values[0], entry.line);
    }

    const KeyEntry& require(const std::string& key) {
        const auto it = stanza_.keys.find(key);
        if (it == stanza_.keys.end()) {
            throw ParseError(ParseErrorCode::MissingKey, stanza_.line, stanza_.column,
                             stanza_.type + " " + stanza_.kind + " needs '" + key + "'");
        }
        used_.push_back(key);
        return it->second;
    }

    bool has(const std::string& key) const { return stanza_.keys.count(key) != 0; }

    void finish() const {
        for (const std::string& key : stanza_.key_order) {
            bool ok = false;
            for (const std::string& u : used_) ok = ok || u == key;
            if (!ok) {
                const KeyEntry& entry = stanza_.keys.at(key);
                throw ParseError(ParseErrorCode::UnknownKey, entry.line, entry.column,
                                 "'" + key + "' is not a key of " + stanza_.type + " " +
                                     stanza_.kind);
            }
        }
    }

private:
    const Stanza& stanza_;
    Index dim_;
    std::vector<std::string> used_;
};

ConvexSet build_set(const Stanza& stanza, Index dim) {
    StanzaReader reader(stanza, dim);
    const std::string& kind = stanza.kind;

    auto positive = [&](const std::string& key, ParseErrorCode code) {
        const double v = reader.scalar(key);
        if (!(v > 0.0)) {
            const KeyEntry& entry = stanza.keys.at(key);
            throw ParseError(code, entry.line, entry.column, "'" + key + "' must be positive");
        }
        return v;
    };

    std::optional<ConvexSet> set;
    if (kind == "singleton") {
        set = ConvexSet::singleton(reader.vector("point"));
    } else if (kind == "ball") {
        const Vector center = reader.vector("center");
        set = ConvexSet::ball(center, positive("radius", ParseErrorCode::NonpositiveRadius));
    } else if (kind == "box") {
        const Vector lower = reader.vector("lower");
        const Vector upper = reader.vector("upper");
        if ((lower.array() > upper.array()).any()) {
            throw ParseError(ParseErrorCode::BoxBoundsOrder, stanza.line, stanza.column,
                             "box needs lower <= upper componentwise");
        }
        set = ConvexSet::box(lower, upper);
    } else if (kind == "halfspace" || kind == "hyperplane") {
        const Vector normal = reader.vector("normal");
        if (normal.squaredNorm() == 0.0) {
            const KeyEntry& entry = stanza.keys.at("normal");
            throw ParseError(ParseErrorCode::ZeroNormal, entry.line, entry.column,
                             "normal must be nonzero");
        }
        const double offset = reader.scalar("offset");
        set = kind == "halfspace" ? ConvexSet::halfspace(normal, offset)
                                  : ConvexSet::hyperplane(normal, offset);
    } else if (kind == "simplex") {
        set = ConvexSet::simplex(dim, positive("scale", ParseErrorCode::NonpositiveScale));
    } else if (kind == "l1ball") {
        const Vector center = reader.vector("center");
        set = ConvexSet::l1_ball(center, positive("radius", ParseErrorCode::NonpositiveRadius));
    } else if (kind == "wholespace") {
        set = ConvexSet::whole_space(dim);
    } else {
        throw ParseError(ParseErrorCode::UnknownSetKind, stanza.line, stanza.column,
                         "unknown set kind '" + kind + "'");
    }

    if (stanza.type == "target" && reader.has("weight")) {
        reader.require("weight");  // consume; value read by the caller
    }
    reader.finish();
    return *set;
}

double read_weight(const Stanza& stanza) {
    const auto it = stanza.keys.find("weight");
    if (it == stanza.keys.end()) return 1.0;
    const KeyEntry& entry = it->second;
    if (entry.values.size() != 1) {
        throw ParseError(ParseErrorCode::InvalidValue, entry.line, entry.column,
                         "'weight' takes one value");
    }
    const double w = parse_double(entry.values[0], entry.line);
    if (!(w > 0.0)) {
        throw ParseError(ParseErrorCode::NonpositiveWeight, entry.line, entry.column,
                         "target weight must be positive");
    }
    return w;
}

SolverSettings build_solver_settings(const Stanza& stanza, Index dim) {
    StanzaReader reader(stanza, dim);
    SolverSettings settings;

    if (reader.has("method")) {
        const KeyEntry& entry = reader.require("method");
        if (entry.values.size() != 1) {
            throw ParseError(ParseErrorCode::InvalidValue, entry.line, entry.column,
                             "'method' takes one value");
        }
        const std::string& m = entry.values[0].text;
        if (m == "mm") {
            settings.method = SolverSettings::Method::Mm;
        } else if (m == "subgradient" || m == "subgrad") {
            settings.method = SolverSettings::Method::Subgradient;
        } else {
            throw ParseError(ParseErrorCode::UnknownMethod, entry.line, entry.values[0].column,
                             "method must be 'mm' or 'subgradient'");
        }
    }
    if (reader.has("start")) settings.start = reader.vector("start");

    auto scalar_opt = [&](const char* key, std::optional<double>& slot) {
        if (reader.has(key)) slot = reader.scalar(key);
    };
    scalar_opt("eps-start", settings.eps_start);
    scalar_opt("eps-decay", settings.eps_decay);
    scalar_opt("eps-floor", settings.eps_floor);
    scalar_opt("inner-tol", settings.inner_tol);
    scalar_opt("tolerance", settings.tolerance);
    scalar_opt("step-scale", settings.step_scale);

    if (reader.has("max-iterations")) {
        const KeyEntry& entry = reader.require("max-iterations");
        if (entry.values.size() != 1) {
            throw ParseError(ParseErrorCode::InvalidValue, entry.line, entry.column,
                             "'max-iterations' takes one value");
        }
        const int n = parse_int(entry.values[0], entry.line);
        if (n < 1) {
            throw ParseError(ParseErrorCode::InvalidValue, entry.line, entry.column,
                             "'max-iterations' must be >= 1");
        }
        settings.max_iterations = n;
    }
    if (reader.has("record-trajectory")) {
        const KeyEntry& entry = reader.require("record-trajectory");
        const std::string& v = entry.values.size() == 1 ? entry.values[0].text : "";
        if (v == "true") {
            settings.record_trajectory = true;
        } else if (v == "false") {
            settings.record_trajectory = false;
        } else {
            throw ParseError(ParseErrorCode::InvalidValue, entry.line, entry.column,
                             "'record-trajectory' must be true or false");
        }
    }
    reader.finish();
    return settings;
}

}  // namespace

ParsedProblem parse_problem(std::string_view text) {
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) {
        throw ParseError(ParseErrorCode::MissingHeader, 1, 1,
                         "document must start with 'heron-problem v1'");
    }

    size_t cursor = 0;
    {
        const Line& header = lines[cursor];
        if (header.tokens[0].text != "heron-problem") {
            throw ParseError(ParseErrorCode::MissingHeader, header.number,
                             header.tokens[0].column,
                             "document must start with 'heron-problem v1'");
        }
        if (header.tokens.size() != 2 || header.tokens[1].text != "v1") {
            const Token& t = header.tokens.size() > 1 ? header.tokens[1] : header.tokens[0];
            throw ParseError(ParseErrorCode::UnsupportedVersion, header.number, t.column,
                             "only version v1 is supported");
        }
        ++cursor;
    }

    std::optional<Index> dim;
    std::vector<Stanza> stanzas;
    for (; cursor < lines.size(); ++cursor) {
        const Line& line = lines[cursor];
        const Token& head = line.tokens[0];
        if (head.text == "dimension") {
            if (dim) {
                throw ParseError(ParseErrorCode::DuplicateKey, line.number, head.column,
                                 "'dimension' already given");
            }
            if (line.tokens.size() != 2) {
                throw ParseError(ParseErrorCode::InvalidValue, line.number, head.column,
                                 "'dimension' takes one value");
            }
            const int d = parse_int(line.tokens[1], line.number);
            if (d < 1) {
                throw ParseError(ParseErrorCode::InvalidValue, line.number,
                                 line.tokens[1].column, "'dimension' must be >= 1");
            }
            dim = d;
        } else if (head.text == "constraint" || head.text == "target") {
            if (!dim) {
                throw ParseError(ParseErrorCode::MissingDimension, line.number, head.column,
                                 "'dimension' must come before any set");
            }
            if (line.tokens.size() != 2) {
                throw ParseError(ParseErrorCode::UnknownSetKind, line.number, head.column,
                                 "expected '" + head.text + " <kind>'");
            }
            stanzas.push_back(Stanza{head.text, line.tokens[1].text, line.number, head.column,
                                     {}, {}});
        } else if (head.text == "solver") {
            if (!dim) {
                throw ParseError(ParseErrorCode::MissingDimension, line.number, head.column,
                                 "'dimension' must come before the solver section");
            }
            stanzas.push_back(Stanza{"solver", "", line.number, head.column, {}, {}});
        } else if (!stanzas.empty()) {
            Stanza& stanza = stanzas.back();
            if (stanza.keys.count(head.text) != 0) {
                throw ParseError(ParseErrorCode::DuplicateKey, line.number, head.column,
                                 "'" + head.text + "' already given in this section");
            }
            KeyEntry entry;
            entry.line = line.number;
            entry.column = head.column;
            entry.values.assign(line.tokens.begin() + 1, line.tokens.end());
            stanza.keys.emplace(head.text, std::move(entry));
            stanza.key_order.push_back(head.text);
        } else {
            throw ParseError(ParseErrorCode::StrayLine, line.number, head.column,
                             "expected 'dimension', 'constraint', 'target' or 'solver'");
        }
    }

    std::optional<ConvexSet> constraint;
    int constraint_line = 0;
    std::vector<TargetTerm> targets;
    std::optional<SolverSettings> solver;
    for (const Stanza& stanza : stanzas) {
        if (stanza.type == "constraint") {
            if (constraint) {
                throw ParseError(ParseErrorCode::DuplicateKey, stanza.line, stanza.column,
                                 "only one constraint set is allowed");
            }
            constraint = build_set(stanza, *dim);
            constraint_line = stanza.line;
        } else if (stanza.type == "target") {
            ConvexSet set = build_set(stanza, *dim);
            targets.push_back(TargetTerm{std::move(set), read_weight(stanza)});
        } else {
            if (solver) {
                throw ParseError(ParseErrorCode::DuplicateKey, stanza.line, stanza.column,
                                 "only one solver section is allowed");
            }
            solver = build_solver_settings(stanza, *dim);
        }
    }

    if (!dim) {
        throw ParseError(ParseErrorCode::MissingDimension, lines.back().number, 1,
                         "document has no 'dimension'");
    }
    if (!constraint) {
        throw ParseError(ParseErrorCode::MissingConstraint, lines.back().number, 1,
                         "document has no constraint set");
    }
    if (targets.empty()) {
        throw ParseError(ParseErrorCode::NoTargets, constraint_line, 1,
                         "document has no target sets");
    }

    return ParsedProblem{HeronProblem(std::move(*constraint), std::move(targets)),
                         std::move(solver)};
}

ParsedProblem parse_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string fmt_vector(const Vector& v) {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ' ';
        out += fmt_double(v[i]);
    }
    return out;
}

void serialize_set(std::ostringstream& os, const ConvexSet& set) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                os << "point " << fmt_vector(s.point) << '\n';
            } else if constexpr (std::is_same_v<T, Ball>) {
                os << "center " << fmt_vector(s.center) << '\n';
                os << "radius " << fmt_double(s.radius) << '\n';
            } else if constexpr (std::is_same_v<T, Box>) {
                os << "lower " << fmt_vector(s.lower) << '\n';
                os << "upper " << fmt_vector(s.upper) << '\n';
            } else if constexpr (std::is_same_v<T, Halfspace> ||
                                 std::is_same_v<T, Hyperplane>) {
                os << "normal " << fmt_vector(s.normal) << '\n';
                os << "offset " << fmt_double(s.offset) << '\n';
            } else if constexpr (std::is_same_v<T, Simplex>) {
                os << "scale " << fmt_double(s.scale) << '\n';
            } else if constexpr (std::is_same_v<T, L1Ball>) {
                os << "center " << fmt_vector(s.center) << '\n';
                os << "radius " << fmt_double(s.radius) << '\n';
            }
            // wholespace has no parameters
        },
        set.variant());
}

}  // namespace

std::string serialize_problem(const HeronProblem& problem,
                              const std::optional<SolverSettings>& solver) {
    std::ostringstream os;
    os << "heron-problem v1\n";
    os << "dimension " << problem.dim() << "\n\n";
    os << "constraint " << problem.constraint().kind_name() << '\n';
    serialize_set(os, problem.constraint());
    for (const TargetTerm& t : problem.targets()) {
        os << "\ntarget " << t.set.kind_name() << '\n';
        serialize_set(os, t.set);
        os << "weight " << fmt_double(t.weight) << '\n';
    }
    if (solver) {
        os << "\nsolver\n";
        os << "method "
           << (solver->method == SolverSettings::Method::Mm ? "mm" : "subgradient") << '\n';
        if (solver->start) os << "start " << fmt_vector(*solver->start) << '\n';
        if (solver->eps_start) os << "eps-start " << fmt_double(*solver->eps_start) << '\n';
        if (solver->eps_decay) os << "eps-decay " << fmt_double(*solver->eps_decay) << '\n';
        if (solver->eps_floor) os << "eps-floor " << fmt_double(*solver->eps_floor) << '\n';
        if (solver->inner_tol) os << "inner-tol " << fmt_double(*solver->inner_tol) << '\n';
        if (solver->tolerance) os << "tolerance " << fmt_double(*solver->tolerance) << '\n';
        if (solver->step_scale) os << "step-scale " << fmt_double(*solver->step_scale) << '\n';
        if (solver->max_iterations) os << "max-iterations " << *solver->max_iterations << '\n';
        if (solver->record_trajectory) os << "record-trajectory true\n";
    }
    return os.str();
}

SolverConfig solver_config_from(const SolverSettings& settings) {
    SolverConfig cfg;
    if (settings.max_iterations) cfg.max_iterations = *settings.max_iterations;
    if (settings.tolerance) cfg.step_tolerance = *settings.tolerance;
    cfg.record_trajectory = settings.record_trajectory;

    if (settings.eps_start && *settings.eps_start == 0.0) {
        cfg.schedule = FixedEps{0.0};
    } else {
        PowerLeg legs;
        if (settings.eps_start) legs.start = *settings.eps_start;
        if (settings.eps_decay) legs.decay = *settings.eps_decay;
        if (settings.eps_floor) legs.floor = *settings.eps_floor;
        if (settings.inner_tol) legs.inner_tol = *settings.inner_tol;
        cfg.schedule = legs;
    }
    return cfg;
}

SolveResult run_solver(const HeronProblem& problem, const Vector& start,
                       const SolverSettings& settings) {
    const SolverConfig cfg = solver_config_from(settings);
    if (settings.method == SolverSettings::Method::Subgradient) {
        return subgradient_solve(problem, start,
                                 HarmonicStep{settings.step_scale.value_or(1.0)}, cfg);
    }
    return mm_solve(problem, start, cfg);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
    if (trajectory.records.empty()) {
        throw std::invalid_argument("write_trajectory_csv: trajectory is empty");
    }
    const Index d = trajectory.records.front().x.size();
    os << "iteration,eps";
    for (Index i = 0; i < d; ++i) os << ",x" << (i + 1);
    os << ",objective,objective_eps,step_norm\n";
    char buf[64];
    const auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.16e", v);
        os << ',' << buf;
    };
    for (const TrajectoryRecord& r : trajectory.records) {
        os << r.iteration;
        put(r.eps);
        for (Index i = 0; i < d; ++i) put(r.x[i]);
        put(r.objective);
        put(r.objective_eps);
        put(r.step_norm);
        os << '\n';
    }
}

void write_trajectory_csv_file(const std::string& path, const Trajectory& trajectory) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write_trajectory_csv(out, trajectory);
}

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("trajectory csv: missing header");
    }
    size_t columns = 1;
    for (char c : line) columns += c == ',' ? 1 : 0;
    if (columns < 6) {
        throw std::runtime_error("trajectory csv: bad header");
    }
    const Index d = static_cast<Index>(columns) - 5;

    Trajectory trajectory;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<double> fields;
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + comma, v);
            if (ec != std::errc() || ptr != line.data() + comma) {
                throw std::runtime_error("trajectory csv: malformed number in row " +
                                         std::to_string(row));
            }
            fields.push_back(v);
            pos = comma + 1;
        }
        if (fields.size() != columns) {
            throw std::runtime_error("trajectory csv: row " + std::to_string(row) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(columns));
        }
        TrajectoryRecord r;
        r.iteration = static_cast<int>(fields[0]);
        r.eps = fields[1];
        r.x = Vector(d);
        for (Index i = 0; i < d; ++i) r.x[i] = fields[static_cast<size_t>(2 + i)];
        r.objective = fields[static_cast<size_t>(2 + d)];
        r.objective_eps = fields[static_cast<size_t>(3 + d)];
        r.step_norm = fields[static_cast<size_t>(4 + d)];
        trajectory.records.push_back(std::move(r));
    }
    return trajectory;
}

}  // namespace heron

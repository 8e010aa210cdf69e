#include "anlasso/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace anlasso {

namespace {

using nlohmann::json;

Eigen::MatrixXd parse_matrix(const json& value, const std::string& name) {
    if (!value.is_array() || value.empty())
        throw ParseError("\"" + name + "\" must be a non-empty array of rows");
    const size_t rows = value.size();
    size_t cols = 0;
    Eigen::MatrixXd out;
    for (size_t r = 0; r < rows; ++r) {
        const json& row = value[r];
        if (!row.is_array() || row.empty())
            throw ParseError("\"" + name + "\" rows must be non-empty arrays");
        if (r == 0) {
            cols = row.size();
            out.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        } else if (row.size() != cols) {
            throw ParseError("\"" + name + "\" rows have inconsistent lengths");
        }
        for (size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number())
                throw ParseError("\"" + name + "\" entries must be numbers");
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                row[c].get<double>();
        }
    }
    return out;
}

Eigen::VectorXd parse_vector(const json& value, const std::string& name) {
    if (!value.is_array() || value.empty())
        throw ParseError("\"" + name + "\" must be a non-empty array");
    Eigen::VectorXd out(static_cast<Eigen::Index>(value.size()));
    for (size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number())
            throw ParseError("\"" + name + "\" entries must be numbers");
        out[static_cast<Eigen::Index>(i)] = value[i].get<double>();
    }
    return out;
}

// Minimal JSON emitter with a fixed key order and %.17g doubles, so repeated
// runs produce byte-identical documents.
class JsonWriter {
  public:
    std::string str() const { return out_.str(); }

    void begin_object() { out_ << '{'; first_ = true; }
    void end_object() { out_ << '}'; first_ = false; }

    void key(const std::string& name) {
        if (!first_) out_ << ',';
        first_ = true;
        out_ << '"' << name << "\":";
    }

    void value(double v) { sep(); out_ << format_double(v); }
    void value(int v) { sep(); out_ << v; }
    void value(long v) { sep(); out_ << v; }
    void value(bool v) { sep(); out_ << (v ? "true" : "false"); }
    void value(const std::string& v) { sep(); out_ << '"' << v << '"'; }
    void null() { sep(); out_ << "null"; }

    void value(const Eigen::VectorXd& v) {
        sep();
        out_ << '[';
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (i > 0) out_ << ',';
            out_ << format_double(v[i]);
        }
        out_ << ']';
    }

    void begin_array() { sep(); out_ << '['; first_ = true; }
    void end_array() { out_ << ']'; first_ = false; }

  private:
    void sep() {
        if (!first_) out_ << ',';
        first_ = false;
    }

    std::ostringstream out_;
    bool first_ = true;
};

void write_support(JsonWriter& w, const SupportPattern& support) {
    w.key("support_indices");
    w.begin_array();
    for (const Eigen::Index i : support.indices) w.value(static_cast<long>(i + 1));
    w.end_array();
    w.key("support_signs");
    w.begin_array();
    for (Eigen::Index i = 0; i < support.signs.size(); ++i)
        w.value(support.signs[i]);
    w.end_array();
}

void write_certificate_fields(JsonWriter& w, const CertificateReport& report) {
    w.key("support_inclusion");
    w.value(report.support_inclusion);
    w.key("sign_consistency");
    w.value(report.sign_consistency);
    w.key("same_image");
    w.value(report.same_image);
    w.key("orthant");
    w.value(report.orthant);
    w.key("pass");
    w.value(report.pass);
    w.key("input_valid");
    w.value(report.input_valid);
    w.key("objective_spread");
    w.value(report.objective_spread);
    if (!report.message.empty()) {
        w.key("message");
        w.value(report.message);
    }
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("problem document must be a JSON object");
    for (const std::string key : {"phi", "d", "y", "lambda"}) {
        if (!doc.contains(key)) throw ParseError("missing required key \"" + key + "\"");
    }

    ProblemFile file;
    file.problem.phi = parse_matrix(doc["phi"], "phi");
    file.problem.dict = parse_matrix(doc["d"], "d");
    file.problem.y = parse_vector(doc["y"], "y");
    if (!doc["lambda"].is_number()) throw ParseError("\"lambda\" must be a number");
    file.problem.lambda = doc["lambda"].get<double>();

    const Problem& pr = file.problem;
    if (pr.dict.rows() != pr.phi.cols())
        throw ParseError("\"d\" must have one row per column of \"phi\"");
    if (pr.y.size() != pr.phi.rows())
        throw ParseError("\"y\" length must equal the number of rows of \"phi\"");
    if (!(pr.lambda > 0.0)) throw ParseError("\"lambda\" must be positive");

    if (doc.contains("start_x")) {
        Eigen::VectorXd start = parse_vector(doc["start_x"], "start_x");
        if (start.size() != pr.n())
            throw ParseError("\"start_x\" length must equal the number of columns of \"phi\"");
        file.start_x = start;
    }
    return file;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_json(buffer.str());
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string solve_result_json(const Problem& problem, const SolveResult& result,
                              double support_tol) {
    const SupportPattern support = d_support(result.point.x, problem.dict, support_tol);
    const IterationRecord& last = result.trace.records.back();

    JsonWriter w;
    w.begin_object();
    w.key("x");
    w.value(result.point.x);
    w.key("u");
    w.value(result.point.u);
    w.key("s_summary");
    w.begin_object();
    w.key("min");
    w.value(result.point.s.minCoeff());
    w.key("max");
    w.value(result.point.s.maxCoeff());
    w.key("norm2");
    w.value(result.point.s.norm());
    w.end_object();
    w.key("objective");
    w.value(objective(problem, result.point.x));
    write_support(w, support);
    w.key("iterations");
    w.value(result.trace.iterations());
    w.key("final_residuals");
    w.begin_object();
    w.key("r1");
    w.value(last.r1_norm);
    w.key("r2");
    w.value(last.r2_norm);
    w.key("r3");
    w.value(last.r3_norm);
    w.key("r4");
    w.value(last.r4_norm);
    w.key("mu");
    w.value(last.mu);
    w.end_object();
    w.key("status");
    w.value(to_string(result.trace.status));
    w.end_object();
    return w.str();
}

void write_trace_csv(std::ostream& out, const SolveTrace& trace) {
    out << "iter,mu,r1,r2,r3,r4,step,sigma";
    const Eigen::Index n = trace.records.empty() ? 0 : trace.records.front().x.size();
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x_" << i;
    out << '\n';
    for (const IterationRecord& rec : trace.records) {
        out << rec.iter << ',' << format_double(rec.mu) << ','
            << format_double(rec.r1_norm) << ',' << format_double(rec.r2_norm) << ','
            << format_double(rec.r3_norm) << ',' << format_double(rec.r4_norm) << ','
            << format_double(rec.step) << ',' << format_double(rec.sigma);
        for (Eigen::Index i = 0; i < rec.x.size(); ++i)
            out << ',' << format_double(rec.x[i]);
        out << '\n';
    }
}

std::string certificate_json(const CertificateReport& report) {
    JsonWriter w;
    w.begin_object();
    write_certificate_fields(w, report);
    w.end_object();
    return w.str();
}

std::string certify_result_json(const Problem& problem, const OracleResult& oracle,
                                const SolveResult* solver_result,
                                const CertificateReport* certificate,
                                double support_tol) {
    JsonWriter w;
    w.begin_object();

    w.key("oracle");
    w.begin_object();
    w.key("optimal_value");
    w.value(oracle.optimal_value);
    w.key("vertex_count");
    w.value(static_cast<long>(oracle.vertices.size()));
    w.key("vertices");
    w.begin_array();
    for (const auto& v : oracle.vertices) w.value(v);
    w.end_array();
    w.key("analytic_center");
    w.value(oracle.analytic_center);
    w.end_object();

    w.key("solver");
    if (solver_result) {
        const SupportPattern support =
            d_support(solver_result->point.x, problem.dict, support_tol);
        w.begin_object();
        w.key("x");
        w.value(solver_result->point.x);
        w.key("objective");
        w.value(objective(problem, solver_result->point.x));
        write_support(w, support);
        w.key("iterations");
        w.value(solver_result->trace.iterations());
        w.key("status");
        w.value(to_string(solver_result->trace.status));
        w.end_object();
    } else {
        w.null();
    }

    w.key("certificate");
    if (certificate) {
        w.begin_object();
        write_certificate_fields(w, *certificate);
        w.end_object();
    } else {
        w.null();
    }

    w.key("comparison");
    if (solver_result) {
        const double solver_objective = objective(problem, solver_result->point.x);
        w.begin_object();
        w.key("solver_objective");
        w.value(solver_objective);
        w.key("oracle_objective");
        w.value(oracle.optimal_value);
        w.key("objective_gap");
        w.value(solver_objective - oracle.optimal_value);
        w.key("center_distance");
        w.value((solver_result->point.x - oracle.analytic_center)
                    .lpNorm<Eigen::Infinity>());
        w.end_object();
    } else {
        w.null();
    }

    w.end_object();
    return w.str();
}

}  // namespace anlasso

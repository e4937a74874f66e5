// osclat: exact classification of lattices in four dimensional oscillator
// groups.  Subcommands read and emit one JSON object per line so output can
// be piped straight back in.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "osclat/io.hpp"
#include "osclat/verify.hpp"

namespace {

using namespace osclat;

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open input file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Command line angle literal: bare base name or the JSON object literal.
nlohmann::json parse_cli_angle(const std::string& text)
{
    if (!text.empty() && text.front() == '{') {
        try {
            return nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("--lambda is not valid JSON: ") + e.what());
        }
    }
    return nlohmann::json(text);
}

struct TraceData {
    std::optional<NormalizationResult> norm;
    std::optional<Reduction>           red;
    Scalar                             z0;
};

LatticeData classify_document(const SpecDocument& doc, int cutoff, TraceData* trace)
{
    LatticeSpec spec = [&] {
        if (doc.kind == SpecDocument::Kind::standard)
            return *doc.spec;
        NormalizationResult n = normalize(*doc.raw);
        if (trace)
            trace->norm = n;
        return spec_from_normalization(n);
    }();
    if (trace) {
        trace->red = reduce_fundamental(spec.B.x, spec.B.y);
        trace->z0  = spec.z0;
    }
    return classify_lattice(spec, cutoff);
}

void print_classification(const SpecDocument& doc, int cutoff, bool with_trace)
{
    TraceData   trace;
    LatticeData data = classify_document(doc, cutoff, with_trace ? &trace : nullptr);
    auto        out  = data_to_json(data);
    if (with_trace) {
        nlohmann::ordered_json t;
        t["t0"] = trace.norm ? format_rational(trace.norm->t0) : "1";
        if (trace.norm) {
            t["normalization_S"] = mat_to_json(trace.norm->S);
            trace.z0             = trace.norm->z0; // removed central shift
        }
        t["z0"]          = format_scalar(trace.z0);
        t["flip"]        = trace.red->flip;
        t["reduction_S"] = mat_to_json(trace.red->S);
        out["trace"]     = t;
    }
    std::cout << out.dump() << "\n";
}

int run_classify(const std::string& path, int cutoff, bool with_trace)
{
    print_classification(parse_spec_text(read_input(path)), cutoff, with_trace);
    return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b, int cutoff)
{
    LatticeData da = classify_document(parse_spec_text(read_input(path_a)), cutoff, nullptr);
    LatticeData db = classify_document(parse_spec_text(read_input(path_b)), cutoff, nullptr);
    nlohmann::ordered_json verdict;
    verdict["verdict"] = (da == db) ? "equivalent" : "inequivalent";
    std::cout << verdict.dump() << "\n";
    std::cout << data_to_json(da).dump() << "\n";
    std::cout << data_to_json(db).dump() << "\n";
    return 0;
}

std::pair<Angle, FundamentalPoint> cell_from_flags(const std::string& lambda_text,
                                                  const std::string& x_text,
                                                  const std::string& y_text)
{
    Angle lambda = detail::admissible_angle_field(parse_cli_angle(lambda_text), "--lambda");
    Scalar x     = parse_scalar(x_text, "--x");
    Scalar y     = parse_scalar(y_text, "--y");
    return {lambda, FundamentalPoint(x, y)};
}

int run_table(const std::string& lambda_text, const std::string& x_text,
              const std::string& y_text, long r)
{
    auto [lambda, pt] = cell_from_flags(lambda_text, x_text, y_text);
    for (const TableEntry& e : classification_table(lambda, pt, Integer(r))) {
        nlohmann::ordered_json line;
        line["xi0"]        = xi_to_json(e.xi1, e.xi2);
        line["class_size"] = e.class_size;
        std::cout << line.dump() << "\n";
    }
    return 0;
}

int run_orbits(const std::string& lambda_text, const std::string& x_text,
               const std::string& y_text, long r)
{
    auto [lambda, pt] = cell_from_flags(lambda_text, x_text, y_text);
    StructureMatrix B(lambda, pt.x, pt.y);
    if (!B.exp_tB(1).is_integral())
        throw NonLatticeError("the structure exponential at (" + format_scalar(pt.x) + ", " +
                              format_scalar(pt.y) + ") with this angle is not an integer matrix");
    for (const auto& orbit : orbit_partition(Integer(r), B)) {
        nlohmann::ordered_json line;
        line["size"] = orbit.size();
        auto members = nlohmann::ordered_json::array();
        for (const auto& p : orbit)
            members.push_back(xi_to_json(p.first, p.second));
        line["members"] = members;
        std::cout << line.dump() << "\n";
    }
    return 0;
}

int run_verify(const VerifyOptions& opt)
{
    bool all = true;
    for (const CheckResult& res : run_all_checks(opt)) {
        nlohmann::ordered_json line;
        line["check"]  = res.name;
        line["pass"]   = res.pass;
        line["detail"] = res.detail;
        std::cout << line.dump() << "\n";
        all = all && res.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact classification of lattices in four dimensional oscillator groups"};
    app.require_subcommand(1);

    std::string path_a, path_b;
    std::string lambda_text, x_text, y_text;
    long        r_flag = 1;
    int         cutoff = 12;
    bool        with_trace = false;
    osclat::VerifyOptions vopt;

    CLI::App* c_classify = app.add_subcommand("classify", "canonical data of one lattice");
    c_classify->add_option("file", path_a, "input document, - for stdin")->required();
    c_classify->add_flag("--trace", with_trace, "include normalization and reduction data");
    c_classify->add_option("--oracle-cutoff", cutoff, "orbit cross check bound on r");

    CLI::App* c_compare = app.add_subcommand("compare", "decide equivalence of two lattices");
    c_compare->add_option("a", path_a, "first input document")->required();
    c_compare->add_option("b", path_b, "second input document")->required();
    c_compare->add_option("--oracle-cutoff", cutoff, "orbit cross check bound on r");

    auto add_cell_flags = [&](CLI::App* cmd) {
        cmd->add_option("--lambda", lambda_text, "angle literal, e.g. pi/3 or {\"base\":\"pi\",\"k\":1}")
            ->required();
        cmd->add_option("--x", x_text, "first point coordinate")->required();
        cmd->add_option("--y", y_text, "second point coordinate")->required();
        cmd->add_option("--r", r_flag, "commutator exponent")->required()->check(CLI::PositiveNumber);
    };
    CLI::App* c_table = app.add_subcommand("table", "classification table of one cell");
    add_cell_flags(c_table);
    CLI::App* c_orbits = app.add_subcommand("orbits", "full orbit partition of one cell");
    add_cell_flags(c_orbits);

    CLI::App* c_verify = app.add_subcommand("verify", "run the self check suite");
    c_verify->add_option("--r-max", vopt.r_max, "largest commutator exponent to sweep")
        ->check(CLI::PositiveNumber);
    c_verify->add_option("--oracle-cutoff", vopt.oracle_cutoff, "orbit cross check bound on r");
    c_verify->add_option("--seed", vopt.seed, "random seed for the sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // fold CLI11's code zoo into the usage exit
    }

    try {
        if (c_classify->parsed())
            return run_classify(path_a, cutoff, with_trace);
        if (c_compare->parsed())
            return run_compare(path_a, path_b, cutoff);
        if (c_table->parsed())
            return run_table(lambda_text, x_text, y_text, r_flag);
        if (c_orbits->parsed())
            return run_orbits(lambda_text, x_text, y_text, r_flag);
        return run_verify(vopt);
    } catch (const osclat::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const osclat::NonLatticeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "skaff/catalog.hpp"
#include "skaff/diagram.hpp"
#include "skaff/duality.hpp"
#include "skaff/errors.hpp"
#include "skaff/evaluate.hpp"
#include "skaff/json_io.hpp"
#include "skaff/scheme.hpp"
#include "skaff/translation.hpp"

namespace {

using skaff::cplx;
using ordered = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) skaff::fail(skaff::ErrorKind::InvalidInput, "cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

skaff::LoadedScheme load_scheme(const std::string& ref) {
    if (skaff::is_builtin_ref(ref)) {
        auto ts = skaff::builtin_scheme(ref);
        skaff::LoadedScheme out{ts.scheme, std::move(ts)};
        return out;
    }
    return skaff::scheme_from_json(read_file(ref));
}

skaff::Diagram load_diagram(const std::string& ref) {
    if (skaff::is_builtin_ref(ref)) return skaff::builtin_diagram(ref);
    return skaff::build_diagram(skaff::diagram_spec_from_json(read_file(ref)));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) skaff::fail(skaff::ErrorKind::InvalidInput, "cannot write file '" + out_path + "'");
    out << text;
}

std::string fmt_real(double x) {
    if (x == 0.0) x = 0.0; // normalize -0
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string fmt_complex(const cplx& z) {
    if (z.imag() == 0.0) return fmt_real(z.real());
    return fmt_real(z.real()) + (z.imag() < 0.0 ? "-" : "+") + fmt_real(std::abs(z.imag())) + "i";
}

// Name for a traced edge slot: graph edges keep their ids, boundary arcs
// are b1..bl.
std::string slot_name(const skaff::Diagram& d, int edge) {
    int m = static_cast<int>(d.edges.size());
    if (edge < m) return d.edges[edge].id;
    return "b" + std::to_string(edge - m + 1);
}

std::string traversal_name(const skaff::Diagram& d, const skaff::Traversal& t) {
    return slot_name(d, t.edge) + (t.forward ? ":f" : ":b");
}

struct SchemeValidateCmd {
    std::string ref;
    bool json = false;

    int run() const {
        auto loaded = load_scheme(ref); // throws on axiom violations
        const auto& s = loaded.scheme;
        if (json) {
            ordered j;
            j["valid"] = true;
            j["kind"] = loaded.translation ? "translation" : "explicit";
            j["size"] = s.size;
            j["classes"] = s.d + 1;
            j["valencies"] = s.valencies;
            j["has_eigen_data"] = s.has_eigen();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "ok: association scheme on " << s.size << " points with " << s.d + 1 << " classes\n";
            std::cout << "valencies:";
            for (auto k : s.valencies) std::cout << " " << k;
            std::cout << "\n";
        }
        return 0;
    }
};

struct SchemeParamsCmd {
    std::string ref;
    bool json = false;

    int run() const {
        auto loaded = load_scheme(ref);
        const auto& s = loaded.scheme;
        if (json) {
            std::cout << skaff::params_to_json(s);
            return 0;
        }
        int m = s.d + 1;
        std::cout << "scheme on " << s.size << " points with " << m << " classes\n";
        std::cout << "p(i,j,k), one matrix per i (rows j, columns k):\n";
        for (int i = 0; i < m; ++i) {
            std::cout << "  i=" << i << "\n";
            for (int jj = 0; jj < m; ++jj) {
                std::cout << "   ";
                for (int k = 0; k < m; ++k) std::cout << " " << s.p_at(i, jj, k);
                std::cout << "\n";
            }
        }
        if (s.krein) {
            std::cout << "q(i,j,k), one matrix per i:\n";
            for (int i = 0; i < m; ++i) {
                std::cout << "  i=" << i << "\n";
                for (int jj = 0; jj < m; ++jj) {
                    std::cout << "   ";
                    for (int k = 0; k < m; ++k) std::cout << " " << fmt_real(s.q_at(i, jj, k).real());
                    std::cout << "\n";
                }
            }
        }
        if (s.eigen) {
            auto show = [&](const char* name, const std::vector<cplx>& flat) {
                std::cout << name << ":\n";
                for (int r = 0; r < m; ++r) {
                    std::cout << " ";
                    for (int c = 0; c < m; ++c) std::cout << " " << fmt_complex(flat[static_cast<size_t>(r) * m + c]);
                    std::cout << "\n";
                }
            };
            show("P", s.eigen->P);
            show("Q", s.eigen->Q);
        } else {
            std::cout << "no spectral data (explicit scheme)\n";
        }
        return 0;
    }
};

struct SchemeDualCmd {
    std::string ref;
    std::string out;

    int run() const {
        auto loaded = load_scheme(ref);
        if (!loaded.translation)
            skaff::fail(skaff::ErrorKind::UnsupportedOperation,
                        "the dual scheme needs a translation scheme; explicit relation lists carry no group");
        emit(skaff::translation_to_json(skaff::dual_scheme(*loaded.translation)), out);
        return 0;
    }
};

struct DiagramFacesCmd {
    std::string ref;
    bool json = false;

    int run() const {
        auto d = load_diagram(ref);
        auto fs = skaff::trace_faces(d);
        if (json) {
            ordered j;
            j["count"] = fs.faces.size();
            ordered faces = ordered::array();
            for (const auto& face : fs.faces) {
                ordered fj = ordered::array();
                for (const auto& t : face) fj.push_back(traversal_name(d, t));
                faces.push_back(std::move(fj));
            }
            j["faces"] = std::move(faces);
            j["outer"] = fs.outer_face;
            j["boundary"] = fs.boundary_face;
            j["root_faces"] = fs.root_faces;
            ordered sides = ordered::array();
            for (int e = 0; e < fs.edge_count; ++e) {
                ordered sj;
                sj["edge"] = slot_name(d, e);
                sj["left"] = fs.left_face[e];
                sj["right"] = fs.right_face[e];
                sides.push_back(std::move(sj));
            }
            j["edge_sides"] = std::move(sides);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << fs.faces.size() << " faces\n";
            for (size_t f = 0; f < fs.faces.size(); ++f) {
                std::cout << "  f" << f << ":";
                for (const auto& t : fs.faces[f]) std::cout << " " << traversal_name(d, t);
                for (size_t i = 0; i < fs.root_faces.size(); ++i)
                    if (fs.root_faces[i] == static_cast<int>(f)) std::cout << "  [q" << i + 1 << "]";
                if (fs.outer_face == static_cast<int>(f)) std::cout << "  [outer]";
                if (fs.outer_face != fs.boundary_face && fs.boundary_face == static_cast<int>(f))
                    std::cout << "  [boundary]";
                std::cout << "\n";
            }
        }
        return 0;
    }
};

struct DiagramDualCmd {
    std::string ref;
    std::string out;

    int run() const {
        emit(skaff::diagram_to_json(skaff::dual_diagram(load_diagram(ref))), out);
        return 0;
    }
};

struct ScaffoldEvalCmd {
    std::string ref;
    std::string scheme_ref;
    std::string method = "elim";
    std::vector<std::string> order;
    std::string out;
    bool json = false;
    skaff::EvalLimits limits;

    int run() const {
        auto d = load_diagram(ref);
        auto loaded = load_scheme(scheme_ref);
        skaff::ScaffoldTensor t;
        if (method == "brute") {
            if (!order.empty())
                skaff::fail(skaff::ErrorKind::InvalidInput, "--order applies to the elimination method only");
            t = skaff::eval_bruteforce(d, loaded.scheme, limits);
        } else {
            std::optional<std::vector<std::string>> ord;
            if (!order.empty()) ord = order;
            t = skaff::eval_elimination(d, loaded.scheme, ord, limits);
        }
        if (!out.empty() || json) {
            emit(skaff::tensor_to_json(t), out);
            return 0;
        }
        std::cout << "order " << t.ell << " tensor over " << t.base_size << " points\n";
        std::vector<int> idx(t.ell, 0);
        for (size_t flat = 0; flat < t.entries.size(); ++flat) {
            std::cout << "  ";
            if (t.ell == 0) {
                std::cout << "scalar";
            } else {
                size_t rest = flat;
                for (int a = t.ell - 1; a >= 0; --a) {
                    idx[a] = static_cast<int>(rest % t.base_size);
                    rest /= t.base_size;
                }
                for (int a = 0; a < t.ell; ++a) std::cout << (a ? "," : "") << idx[a];
            }
            std::cout << ": " << fmt_complex(t.entries[flat]) << "\n";
        }
        return 0;
    }
};

struct VerifyDualityCmd {
    std::string ref;
    std::string scheme_ref;
    double tol = 1e-8;
    bool json = false;
    skaff::EvalLimits limits;

    int run() const {
        auto d = load_diagram(ref);
        auto loaded = load_scheme(scheme_ref);
        if (!loaded.translation)
            skaff::fail(skaff::ErrorKind::UnsupportedOperation,
                        "the duality check needs a translation scheme; explicit relation lists carry no group");
        auto rep = skaff::verify_duality(d, *loaded.translation, tol, limits);
        if (json) {
            ordered j;
            j["pass"] = rep.pass;
            j["ell"] = rep.ell;
            j["nodes"] = rep.nodes;
            j["scalar"] = rep.scalar;
            j["max_residual"] = rep.max_residual;
            j["gamma_residual"] = rep.gamma_residual;
            j["eval_primal_ms"] = rep.eval_primal_ms;
            j["eval_dual_ms"] = rep.eval_dual_ms;
            j["transform_ms"] = rep.transform_ms;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "order " << rep.ell << " scaffold on " << rep.nodes << " nodes\n";
            std::cout << "scalar: " << fmt_real(rep.scalar) << "\n";
            std::cout << "max residual: " << fmt_real(rep.max_residual) << "\n";
            std::cout << "gamma residual: " << fmt_real(rep.gamma_residual) << "\n";
            std::cout << "timings ms: primal " << fmt_real(rep.eval_primal_ms) << ", dual "
                      << fmt_real(rep.eval_dual_ms) << ", transform " << fmt_real(rep.transform_ms) << "\n";
            std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
        }
        return rep.pass ? 0 : 1;
    }
};

struct DualizeCmd {
    std::string ref;
    std::string scheme_ref;
    std::string out;
    bool json = false;

    int run() const {
        auto d = load_diagram(ref);
        auto loaded = load_scheme(scheme_ref);
        auto terms = skaff::dualize_combination({{cplx{1.0, 0.0}, d}}, loaded.scheme.size);
        const auto& [scale, dual] = terms.front();
        auto diagram_json = ordered::parse(skaff::diagram_to_json(dual));
        if (json || !out.empty()) {
            ordered j;
            j["scale"] = ordered::array({scale.real(), scale.imag()});
            j["diagram"] = std::move(diagram_json);
            emit(j.dump(2) + "\n", out);
        } else {
            std::cout << "scale: " << fmt_complex(scale) << "\n";
            std::cout << skaff::diagram_to_json(dual);
        }
        return 0;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scaffold calculus over association schemes"};
    app.set_version_flag("--version", "scaf 0.1.0");
    app.require_subcommand(1);

    int exit_code = 0;
    auto wire = [&exit_code](CLI::App* sub, auto& cmd) {
        sub->callback([&exit_code, &cmd]() { exit_code = cmd.run(); });
    };

    auto* scheme = app.add_subcommand("scheme", "inspect association schemes");
    scheme->require_subcommand(1);

    SchemeValidateCmd sv;
    auto* sv_app = scheme->add_subcommand("validate", "check the scheme axioms");
    sv_app->add_option("scheme", sv.ref, "scheme file or builtin:<name>")->required();
    sv_app->add_flag("--json", sv.json, "machine-readable output");
    wire(sv_app, sv);

    SchemeParamsCmd sp;
    auto* sp_app = scheme->add_subcommand("params", "intersection numbers, Krein parameters, eigenmatrices");
    sp_app->add_option("scheme", sp.ref, "scheme file or builtin:<name>")->required();
    sp_app->add_flag("--json", sp.json, "machine-readable output");
    wire(sp_app, sp);

    SchemeDualCmd sd;
    auto* sd_app = scheme->add_subcommand("dual", "dual of a translation scheme");
    sd_app->add_option("scheme", sd.ref, "translation scheme file or builtin:<name>")->required();
    sd_app->add_option("--out", sd.out, "write to a file instead of stdout");
    wire(sd_app, sd);

    auto* diagram = app.add_subcommand("diagram", "inspect scaffold diagrams");
    diagram->require_subcommand(1);

    DiagramFacesCmd df;
    auto* df_app = diagram->add_subcommand("faces", "trace the faces of the disk embedding");
    df_app->add_option("diagram", df.ref, "diagram file or builtin:<name>")->required();
    df_app->add_flag("--json", df.json, "machine-readable output");
    wire(df_app, df);

    DiagramDualCmd dd;
    auto* dd_app = diagram->add_subcommand("dual", "planar dual diagram");
    dd_app->add_option("diagram", dd.ref, "diagram file or builtin:<name>")->required();
    dd_app->add_option("--out", dd.out, "write to a file instead of stdout");
    wire(dd_app, dd);

    auto* scaffold = app.add_subcommand("scaffold", "evaluate and dualize scaffold tensors");
    scaffold->require_subcommand(1);

    ScaffoldEvalCmd se;
    auto* se_app = scaffold->add_subcommand("eval", "contract a diagram to its tensor");
    se_app->add_option("diagram", se.ref, "diagram file or builtin:<name>")->required();
    se_app->add_option("--scheme", se.scheme_ref, "scheme file or builtin:<name>")->required();
    se_app->add_option("--method", se.method, "brute or elim")->check(CLI::IsMember({"brute", "elim"}));
    se_app->add_option("--order", se.order, "comma-separated elimination order")->delimiter(',');
    se_app->add_option("--max-entries", se.limits.max_entries, "output/assignment size cap");
    se_app->add_option("--max-intermediate", se.limits.max_intermediate, "per-step tensor size cap");
    se_app->add_option("--out", se.out, "write tensor JSON to a file");
    se_app->add_flag("--json", se.json, "print tensor JSON on stdout");
    wire(se_app, se);

    VerifyDualityCmd vd;
    auto* vd_app = scaffold->add_subcommand("verify-duality", "check the dual tensor against the transform");
    vd_app->add_option("diagram", vd.ref, "diagram file or builtin:<name>")->required();
    vd_app->add_option("--scheme", vd.scheme_ref, "translation scheme file or builtin:<name>")->required();
    vd_app->add_option("--tol", vd.tol, "relative tolerance");
    vd_app->add_option("--max-entries", vd.limits.max_entries, "output/assignment size cap");
    vd_app->add_option("--max-intermediate", vd.limits.max_intermediate, "per-step tensor size cap");
    vd_app->add_flag("--json", vd.json, "machine-readable report");
    wire(vd_app, vd);

    DualizeCmd dz;
    auto* dz_app = scaffold->add_subcommand("dualize", "dual diagram with its scaling factor");
    dz_app->add_option("diagram", dz.ref, "diagram file or builtin:<name>")->required();
    dz_app->add_option("--scheme", dz.scheme_ref, "scheme file or builtin:<name>")->required();
    dz_app->add_option("--out", dz.out, "write to a file instead of stdout");
    dz_app->add_flag("--json", dz.json, "machine-readable output");
    wire(dz_app, dz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const skaff::Error& e) {
        std::cerr << "error (" << skaff::to_string(e.kind()) << "): " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

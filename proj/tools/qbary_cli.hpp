#pragma once

// Command-line front end. execute() takes the argument vector (without the
// program name) and writes the result document to `out`, errors to `err`.
//
// Exit codes: 0 success, 1 input or precondition error, 2 internal inconsistency.

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbary/qbary.hpp"

namespace qbary::cli {

using io::encode;
using io::Json;

struct Options {
    std::vector<std::string> inputs;
    std::string rays, offsets, vertices;
    std::optional<std::int64_t> k, q, k_max;
    std::optional<std::size_t> order;
    std::vector<std::int64_t> ks, v, mult;
    bool table = false;
    bool approx = false;
};

class Session {
public:
    Session(std::string command, const Options& opt) : command_(std::move(command)), opt_(opt) {}

    int run(std::ostream& out)
    {
        doc_["command"] = command_;
        doc_["input"] = nullptr;
        doc_["outputs"] = Json::object();
        doc_["diagnostics"] = Json::array();
        dispatch();
        if (opt_.table)
            render_table(out);
        else
            out << doc_.dump(2) << "\n";
        return failed_ ? 2 : 0;
    }

private:
    // -- input ---------------------------------------------------------------

    io::PolytopeDocument document(std::size_t index = 0)
    {
        io::PolytopeDocument d;
        if (!opt_.inputs.empty()) {
            require(index < opt_.inputs.size(), ErrorKind::InvalidInput, "missing --input");
            d = io::load_polytope_document(opt_.inputs[index]);
            if (d.name.empty())
                d.name = opt_.inputs[index];
        } else {
            require(index == 0, ErrorKind::InvalidInput, "inline data describes a single polytope");
            Json j = Json::object();
            if (!opt_.vertices.empty())
                j["vertices"] = io::parse_json(opt_.vertices, "--vertices");
            if (!opt_.rays.empty())
                j["rays"] = io::parse_json(opt_.rays, "--rays");
            if (!opt_.offsets.empty())
                j["offsets"] = io::parse_json(opt_.offsets, "--offsets");
            require(!j.empty(), ErrorKind::InvalidInput, "give --input, or --rays with --offsets, or --vertices");
            d = io::parse_polytope_document(j);
            d.name = "inline";
        }
        if (index == 0)
            doc_["input"] = d.name;
        return d;
    }

    Polytope polytope() { return io::document_polytope(document()); }
    ToricData toric() { return io::document_toric_data(document()); }

    std::int64_t k_or(std::int64_t fallback) const { return opt_.k.value_or(fallback); }

    LatticeVector direction(std::size_t dim) const
    {
        require(!opt_.v.empty(), ErrorKind::InvalidInput, "--v is required");
        require(opt_.v.size() == dim, ErrorKind::InvalidInput, "--v must have " + std::to_string(dim) + " entries");
        return LatticeVector(opt_.v.begin(), opt_.v.end());
    }

    std::size_t order_or_default(std::size_t dim) const { return opt_.order.value_or(2 * dim + 2); }

    // -- output --------------------------------------------------------------

    Json& outputs() { return doc_["outputs"]; }

    void check(const std::string& name, bool ok, const std::string& detail = "")
    {
        Json d = Json::object();
        d["check"] = name;
        d["status"] = ok ? "pass" : "fail";
        if (!detail.empty())
            d["detail"] = detail;
        doc_["diagnostics"].push_back(d);
        if (!ok)
            failed_ = true;
    }

    void note(const std::string& name, const std::string& detail)
    {
        Json d = Json::object();
        d["check"] = name;
        d["status"] = "skipped";
        d["detail"] = detail;
        doc_["diagnostics"].push_back(d);
    }

    static Json approximate(const Json& j)
    {
        if (j.is_string()) {
            try {
                Rational r = parse_rational(j.get<std::string>());
                std::ostringstream os;
                os << std::setprecision(12) << r.convert_to<double>();
                return os.str();
            } catch (const Error&) {
                return j;
            }
        }
        if (j.is_array() || j.is_object()) {
            Json out = j;
            for (auto it = out.begin(); it != out.end(); ++it)
                *it = approximate(*it);
            return out;
        }
        return j;
    }

    void render_table(std::ostream& out) const
    {
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header{"key", "value"};
        if (opt_.approx)
            header.push_back("approx (display only)");
        rows.push_back(header);
        for (auto it = doc_["outputs"].begin(); it != doc_["outputs"].end(); ++it) {
            std::vector<std::string> row{it.key(), it.value().dump()};
            if (opt_.approx)
                row.push_back(approximate(it.value()).dump());
            rows.push_back(row);
        }
        for (const auto& d : doc_["diagnostics"]) {
            std::vector<std::string> row{"check " + d["check"].get<std::string>(), d["status"].get<std::string>()};
            if (opt_.approx)
                row.push_back("");
            rows.push_back(row);
        }
        std::vector<std::size_t> width(header.size(), 0);
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size(); ++c)
                width[c] = std::max(width[c], r[c].size());
        out << command_ << " " << (doc_["input"].is_string() ? doc_["input"].get<std::string>() : "") << "\n";
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                out << r[c];
                if (c + 1 < r.size())
                    out << std::string(width[c] - r[c].size() + 2, ' ');
            }
            out << "\n";
        }
    }

    void finish_approx()
    {
        if (opt_.approx && !opt_.table)
            doc_["approx_display_only"] = approximate(doc_["outputs"]);
    }

    // -- commands ------------------------------------------------------------

    void dispatch()
    {
        static const std::map<std::string, void (Session::*)()> table{
            {"count", &Session::cmd_count},
            {"bck", &Session::cmd_bck},
            {"bc", &Session::cmd_bc},
            {"ehrhart", &Session::cmd_ehrhart},
            {"reciprocity", &Session::cmd_reciprocity},
            {"expand", &Session::cmd_expand},
            {"rooftop", &Session::cmd_rooftop},
            {"classify", &Session::cmd_classify},
            {"mixed-volume", &Session::cmd_mixed_volume},
            {"hrr", &Session::cmd_hrr},
            {"rooftop-coeffs", &Session::cmd_rooftop_coeffs},
            {"delta", &Session::cmd_delta},
            {"delta-seq", &Session::cmd_delta_seq},
            {"df", &Session::cmd_df},
            {"fan", &Session::cmd_fan},
        };
        (this->*table.at(command_))();
        finish_approx();
    }

    void cmd_count()
    {
        Polytope p = polytope();
        const std::int64_t k = k_or(1);
        outputs()["count"] = encode(count_points(p, k));
        if (k >= 1)
            outputs()["interior_count"] = encode(interior_count(p, k));
    }

    void cmd_bck()
    {
        Polytope p = polytope();
        const std::int64_t k = k_or(1);
        RationalVector direct = quantized_barycenter(p, k);
        outputs()["Bc_k"] = encode(direct);
        BarycenterFunction bf = barycenter_function(p);
        check("rational_function", bf(k) == direct);
        if (p.dim() == 2 && classify(p).reflexive)
            check("reflexive_polygon_closed_form", reflexive_polygon_bck(p, k) == direct);
    }

    void cmd_bc()
    {
        Polytope p = polytope();
        MeasureData m = measure(p);
        FacetData f = facet_data(p);
        outputs()["volume"] = encode(m.volume);
        outputs()["Bc"] = encode(m.barycenter);
        outputs()["boundary_normalized_volume"] = encode(f.boundary_normalized_volume);
        outputs()["boundary_barycenter"] = encode(f.boundary_barycenter);
    }

    void cmd_ehrhart()
    {
        Polytope p = polytope();
        Polynomial e = ehrhart_polynomial(p).poly;
        outputs()["ehrhart"] = encode(e);
        if (classify(p).reflexive && (p.dim() == 2 || p.dim() == 3))
            check("reflexive_closed_form", reflexive_closed_form(p).poly == e);
    }

    void cmd_reciprocity()
    {
        Polytope p = polytope();
        ReciprocityReport r = reciprocity_check(p, opt_.k_max.value_or(4));
        Json rows = Json::array();
        for (const auto& e : r.entries) {
            Json row = Json::object();
            row["k"] = e.k;
            row["E(-k)"] = encode(e.ehrhart_at_minus_k);
            row["interior"] = encode(e.interior);
            row["general"] = e.general;
            row["reflexive"] = e.reflexive ? Json(*e.reflexive) : Json(nullptr);
            rows.push_back(row);
        }
        outputs()["reciprocity"] = rows;
        check("reciprocity", r.all_pass());
    }

    void cmd_expand()
    {
        Polytope p = polytope();
        outputs()["a"] = encode(asymptotic_coefficients(p, order_or_default(p.dim())));
    }

    void cmd_rooftop()
    {
        Polytope p = polytope();
        LatticeVector v = direction(p.dim());
        const std::int64_t q = opt_.q.value_or(canonical_rooftop_offset(p, v));
        Polytope r = rooftop(p, v, q);
        outputs()["q"] = q;
        Json verts = Json::array(), normals = Json::array(), offsets = Json::array();
        for (const auto& x : r.vertices())
            verts.push_back(encode(x));
        for (const auto& f : r.facets()) {
            normals.push_back(encode(f.normal));
            offsets.push_back(f.offset);
        }
        outputs()["vertices"] = verts;
        outputs()["normals"] = normals;
        outputs()["offsets"] = offsets;
    }

    void cmd_classify()
    {
        Polytope p = polytope();
        Classification c = classify(p);
        outputs()["dim"] = p.dim();
        outputs()["reflexive"] = c.reflexive;
        outputs()["delzant"] = c.delzant;
    }

    void cmd_mixed_volume()
    {
        const std::size_t count = std::max<std::size_t>(1, opt_.inputs.size());
        std::vector<std::pair<VirtualPolytope, std::size_t>> args;
        for (std::size_t i = 0; i < count; ++i)
            args.emplace_back(VirtualPolytope(VPolytope(io::document_polytope(document(i)))), 0);
        const std::size_t n = args.front().first.ambient_dim();
        if (opt_.mult.empty()) {
            require(count == 1 || count == n, ErrorKind::InvalidInput, "give --mult for each input");
            for (auto& a : args)
                a.second = n / count;
        } else {
            require(opt_.mult.size() == count, ErrorKind::InvalidInput, "one --mult per input");
            for (std::size_t i = 0; i < count; ++i) {
                require(opt_.mult[i] > 0, ErrorKind::InvalidInput, "multiplicities must be positive");
                args[i].second = static_cast<std::size_t>(opt_.mult[i]);
            }
        }
        outputs()["mixed_volume"] = encode(mixed_volume(args));
    }

    void cmd_hrr()
    {
        ToricData t = toric();
        HrrCoefficients h = hrr_coefficients(t);
        outputs()["a"] = encode(RationalVector(h.a));
        outputs()["volume"] = encode(h.leading);
        outputs()["anticanonical_term"] = encode(h.subleading);
        check("ehrhart_fit", true);
    }

    void cmd_rooftop_coeffs()
    {
        ToricData t = toric();
        LatticeVector v = direction(t.dim());
        const bool formula = t.dim() <= 2;
        RooftopCoefficients r = rooftop_coefficients(t, v, formula);
        outputs()["q"] = r.q;
        outputs()["c_prime"] = encode(RationalVector(r.c_prime));
        check("q_independence", true);
        if (r.from_formula)
            check("bernoulli_formula", *r.from_formula == r.c_prime);
        else
            note("bernoulli_formula", formula ? "rooftop is not Delzant" : "formula route runs for n <= 2 only");
        BarycenterFunction bf = barycenter_function(t.polytope());
        Polynomial lhs(std::vector<Rational>(r.c_prime.begin(), r.c_prime.end()));
        check("barycenter_identity", lhs == bf.pairing_numerator(v));
    }

    void cmd_delta()
    {
        ToricData t = toric();
        Json argmin = Json::array();
        if (opt_.k) {
            DeltaValue d = delta_k(t, *opt_.k);
            outputs()["delta_k"] = encode(d.value);
            for (auto i : d.argmin)
                argmin.push_back(encode(t.rays()[i]));
            outputs()["argmin"] = argmin;
            if (t.dim() == 2 && t.reflexive() && t.delzant())
                check("del_pezzo_closed_form", del_pezzo_closed_form(t, *opt_.k) == d.value);
        } else {
            DeltaValue d = delta(t);
            outputs()["delta"] = encode(d.value);
            for (auto i : d.argmin)
                argmin.push_back(encode(t.rays()[i]));
            outputs()["argmin"] = argmin;
        }
    }

    void cmd_delta_seq()
    {
        ToricData t = toric();
        std::vector<std::int64_t> ks = opt_.ks.empty() ? std::vector<std::int64_t>{1, 2, 3} : opt_.ks;
        DeltaSequence s = delta_sequence(t, ks, std::max<std::size_t>(2, order_or_default(t.dim())));
        Json rows = Json::array();
        const bool del_pezzo = t.dim() == 2 && t.reflexive() && t.delzant();
        bool closed_ok = true;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            Json row = Json::object();
            row["k"] = ks[i];
            row["delta_k"] = encode(s.values[i].value);
            Json argmin = Json::array();
            for (auto r : s.values[i].argmin)
                argmin.push_back(encode(t.rays()[r]));
            row["argmin"] = argmin;
            rows.push_back(row);
            if (del_pezzo)
                closed_ok = closed_ok && del_pezzo_closed_form(t, ks[i]) == s.values[i].value;
            if (ks[i] >= s.k0)
                closed_ok = closed_ok && s.dominant_function(ks[i]) == s.values[i].value;
        }
        outputs()["sequence"] = rows;
        outputs()["dominant_ray"] = encode(t.rays()[s.dominant]);
        Json f = Json::object();
        f["numerator"] = encode(s.dominant_function.numerator());
        f["denominator"] = encode(s.dominant_function.denominator());
        outputs()["dominant_function"] = f;
        outputs()["k0"] = s.k0;
        outputs()["asymptotics"] = encode(RationalVector(s.asymptotics.coefficients));
        check(del_pezzo ? "closed_form_and_dominant_function" : "dominant_function", closed_ok);
    }

    void cmd_df()
    {
        Polytope p = polytope();
        LatticeVector v = direction(p.dim());
        const std::size_t order = order_or_default(p.dim());
        BarycenterFunction bf = barycenter_function(p);
        std::vector<Rational> df = df_coefficients(bf, v, order);
        outputs()["DF"] = encode(RationalVector(df));
        auto a = asymptotic_coefficients(bf, p, std::max<std::size_t>(order, 2));
        check("DF0_is_pairing_with_barycenter", df[0] == dot(a[0], v));
        if (order >= 2)
            check("DF1_is_pairing_with_a1", df[1] == dot(a1_closed_form(p), v));
    }

    void cmd_fan()
    {
        ToricData t = toric();
        RooftopFan fan = rooftop_fan(t, direction(t.dim()));
        Json rays = Json::array();
        for (const auto& r : fan.rays)
            rays.push_back(encode(r));
        outputs()["rays"] = rays;
        outputs()["q"] = fan.q;
    }

    std::string command_;
    const Options& opt_;
    Json doc_;
    bool failed_ = false;
};

inline const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names{"count", "bck",           "bc",    "ehrhart",   "reciprocity",
                                                "expand", "rooftop",      "classify", "mixed-volume", "hrr",
                                                "rooftop-coeffs", "delta", "delta-seq", "df",     "fan"};
    return names;
}

inline int execute(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Exact quantized barycenters of lattice polytopes", "qbary"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--input", opt.inputs, "polytope JSON file (repeat for mixed-volume)");
    app.add_option("--rays", opt.rays, "inline rays, e.g. [[1,0],[0,1],[-1,-1]]");
    app.add_option("--offsets", opt.offsets, "inline offsets, e.g. [1,1,1]");
    app.add_option("--vertices", opt.vertices, "inline vertices");
    app.add_option("--k", opt.k, "dilation parameter");
    app.add_option("--ks", opt.ks, "comma-separated dilation parameters")->delimiter(',');
    app.add_option("--order", opt.order, "number of expansion terms");
    app.add_option("--v", opt.v, "comma-separated integer direction")->delimiter(',')->allow_extra_args(false);
    app.add_option("--k-max", opt.k_max, "largest k for reciprocity");
    app.add_option("--q", opt.q, "rooftop offset");
    app.add_option("--mult", opt.mult, "multiplicity per input for mixed-volume");
    app.add_flag("--table", opt.table, "aligned table instead of JSON");
    app.add_flag("--approx", opt.approx, "add decimal approximations (display only)");
    for (const auto& name : subcommands())
        app.add_subcommand(name);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Session session(command, opt);
        std::ostringstream buffer;
        int code = session.run(buffer);
        out << buffer.str();
        if (code == 2)
            err << "error: InternalInconsistency: a consistency check failed (see diagnostics)\n";
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InternalInconsistency ? 2 : 1;
    }
}

} // namespace qbary::cli

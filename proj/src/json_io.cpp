#include "leekit/json_io.hpp"

#include <fstream>

namespace leekit {

namespace {

const Json& require_field(const Json& j, const char* key, const char* doc) {
    if (!j.is_object() || !j.contains(key))
        throw JsonFormatError(std::string(doc) + ": missing field '" + key + "'");
    return j.at(key);
}

std::int64_t require_int(const Json& j, const char* key, const char* doc) {
    const Json& v = require_field(j, key, doc);
    if (!v.is_number_integer())
        throw JsonFormatError(std::string(doc) + ": field '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::vector<std::int64_t> int_array(const Json& v, const char* what) {
    if (!v.is_array()) throw JsonFormatError(std::string(what) + " must be an array");
    std::vector<std::int64_t> out;
    for (const Json& x : v) {
        if (!x.is_number_integer())
            throw JsonFormatError(std::string(what) + " must hold integers only");
        out.push_back(x.get<std::int64_t>());
    }
    return out;
}

std::vector<GroupElement> element_array(const Json& v, const AbelianGroup& g, const char* what) {
    if (!v.is_array()) throw JsonFormatError(std::string(what) + " must be an array");
    std::vector<GroupElement> out;
    for (const Json& x : v) {
        const std::vector<std::int64_t> res = int_array(x, what);
        if (res.size() != static_cast<size_t>(g.rank()))
            throw JsonFormatError(std::string(what) + ": residue tuple length mismatch");
        for (size_t i = 0; i < res.size(); ++i)
            if (res[i] < 0 || res[i] >= g.invariant_factors()[i])
                throw JsonFormatError(std::string(what) + ": residue out of range");
        out.push_back(GroupElement{res});
    }
    return out;
}

Json elements_to_json(const std::vector<GroupElement>& elems) {
    Json arr = Json::array();
    for (const GroupElement& e : elems) arr.push_back(e.residues);
    return arr;
}

Json factorization_to_json(const std::vector<PrimePower>& f) {
    Json arr = Json::array();
    for (const PrimePower& pp : f) arr.push_back(Json::array({pp.prime, pp.exponent}));
    return arr;
}

std::vector<PrimePower> factorization_from_json(const Json& v, const char* what) {
    if (!v.is_array()) throw JsonFormatError(std::string(what) + " must be an array");
    std::vector<PrimePower> out;
    for (const Json& x : v) {
        if (!x.is_array() || x.size() != 2)
            throw JsonFormatError(std::string(what) + ": entries must be [prime, exponent]");
        out.push_back({x[0].get<std::int64_t>(), x[1].get<int>()});
    }
    return out;
}

}  // namespace

Json group_to_json(const AbelianGroup& g) {
    return Json{{"invariant_factors", g.invariant_factors()}};
}

AbelianGroup group_from_json(const Json& j) {
    const std::vector<std::int64_t> factors =
        int_array(require_field(j, "invariant_factors", "group"), "invariant_factors");
    try {
        return make_group(factors);
    } catch (const std::invalid_argument& e) {
        throw JsonFormatError(std::string("group: ") + e.what());
    }
}

Json witness_to_json(const Witness& w) {
    Json j;
    j["n"] = w.n;
    j["group"] = group_to_json(w.home);
    j["T"] = elements_to_json(w.elements);
    return j;
}

Witness witness_from_json(const Json& j) {
    const std::int64_t n = require_int(j, "n", "witness");
    const AbelianGroup home = group_from_json(require_field(j, "group", "witness"));
    const std::vector<GroupElement> elems =
        element_array(require_field(j, "T", "witness"), home, "witness.T");
    return make_witness(n, home, elems);
}

Json code_to_json(const GroupHomomorphism& phi, const CodeLattice& kernel) {
    Json j;
    j["n"] = phi.source_dim;
    j["group"] = group_to_json(phi.target);
    j["images"] = elements_to_json(phi.images);
    Json basis = Json::array();
    for (const auto& row : kernel.basis) basis.push_back(row);
    j["kernel_basis"] = basis;
    j["determinant"] = kernel.determinant;
    return j;
}

CodeDocument code_from_json(const Json& j) {
    CodeDocument doc;
    doc.n = static_cast<int>(require_int(j, "n", "code"));
    if (doc.n < 1) throw JsonFormatError("code: n must be >= 1");
    doc.group = group_from_json(require_field(j, "group", "code"));
    doc.images = element_array(require_field(j, "images", "code"), doc.group, "code.images");
    if (doc.images.size() != static_cast<size_t>(doc.n))
        throw JsonFormatError("code: image count must equal n");
    if (j.contains("kernel_basis")) {
        CodeLattice lat;
        const Json& basis = j.at("kernel_basis");
        if (!basis.is_array()) throw JsonFormatError("code.kernel_basis must be an array");
        for (const Json& row : basis) {
            lat.basis.push_back(int_array(row, "code.kernel_basis row"));
            if (lat.basis.back().size() != static_cast<size_t>(doc.n))
                throw JsonFormatError("code.kernel_basis rows must have n entries");
        }
        if (lat.basis.size() != static_cast<size_t>(doc.n))
            throw JsonFormatError("code.kernel_basis must have n rows");
        lat.determinant = j.contains("determinant") ? require_int(j, "determinant", "code") : 0;
        doc.kernel = std::move(lat);
    }
    return doc;
}

Json certificate_to_json(const ObstructionCertificate& c) {
    Json j;
    j["n"] = c.n;
    j["kind"] = to_string(c.kind);
    Json ev;
    switch (c.kind) {
        case ObstructionCertificate::Kind::quadratic_sum_mod3: {
            const auto& e = std::get<QuadraticSumEvidence>(c.evidence);
            ev["anticode_order"] = e.anticode_order;
            ev["factorization"] = factorization_to_json(e.factorization);
            ev["squarefree"] = e.squarefree;
            ev["n_mod_9"] = e.n_mod_9;
            ev["axis_coefficient"] = e.axis_coefficient;
            ev["cross_coefficient"] = e.cross_coefficient;
            ev["axis_coefficient_mod_3"] = e.axis_coefficient_mod_3;
            ev["cross_coefficient_mod_3"] = e.cross_coefficient_mod_3;
            ev["square_sum_mod_3"] = e.square_sum_mod_3;
            break;
        }
        case ObstructionCertificate::Kind::pds_power_of_3: {
            const auto& e = std::get<PdsCase5Evidence>(c.evidence);
            ev["group_order"] = e.group_order;
            ev["delta"] = e.delta;
            ev["group_order_factorization"] = factorization_to_json(e.group_order_factorization);
            ev["delta_factorization"] = factorization_to_json(e.delta_factorization);
            ev["group_order_power_of_3"] = e.group_order_power_of_3;
            ev["delta_power_of_3"] = e.delta_power_of_3;
            if (e.group_order_power_of_3) ev["group_order_exponent"] = e.group_order_exponent;
            if (e.delta_power_of_3) ev["delta_exponent"] = e.delta_exponent;
            break;
        }
        case ObstructionCertificate::Kind::counting_violation: {
            const auto& e = std::get<CountingViolationEvidence>(c.evidence);
            ev["group"] = group_to_json(e.group);
            ev["T"] = elements_to_json(e.set);
            ev["source"] = to_string(e.source);
            ev["identity"] = e.identity;
            ev["lhs"] = e.lhs;
            ev["rhs"] = e.rhs;
            break;
        }
    }
    j["evidence"] = ev;
    return j;
}

ObstructionCertificate certificate_from_json(const Json& j) {
    ObstructionCertificate c;
    c.n = require_int(j, "n", "certificate");
    const std::string kind = require_field(j, "kind", "certificate").get<std::string>();
    const Json& ev = require_field(j, "evidence", "certificate");
    if (kind == "quadratic_sum_mod3") {
        c.kind = ObstructionCertificate::Kind::quadratic_sum_mod3;
        QuadraticSumEvidence e;
        e.anticode_order = require_int(ev, "anticode_order", "certificate.evidence");
        e.factorization = factorization_from_json(
            require_field(ev, "factorization", "certificate.evidence"), "factorization");
        e.squarefree = require_field(ev, "squarefree", "certificate.evidence").get<bool>();
        e.n_mod_9 = require_int(ev, "n_mod_9", "certificate.evidence");
        e.axis_coefficient = require_int(ev, "axis_coefficient", "certificate.evidence");
        e.cross_coefficient = require_int(ev, "cross_coefficient", "certificate.evidence");
        e.axis_coefficient_mod_3 = require_int(ev, "axis_coefficient_mod_3", "certificate.evidence");
        e.cross_coefficient_mod_3 =
            require_int(ev, "cross_coefficient_mod_3", "certificate.evidence");
        e.square_sum_mod_3 = require_int(ev, "square_sum_mod_3", "certificate.evidence");
        c.evidence = std::move(e);
    } else if (kind == "pds_power_of_3") {
        c.kind = ObstructionCertificate::Kind::pds_power_of_3;
        PdsCase5Evidence e;
        e.group_order = require_int(ev, "group_order", "certificate.evidence");
        e.delta = require_int(ev, "delta", "certificate.evidence");
        e.group_order_factorization = factorization_from_json(
            require_field(ev, "group_order_factorization", "certificate.evidence"),
            "group_order_factorization");
        e.delta_factorization = factorization_from_json(
            require_field(ev, "delta_factorization", "certificate.evidence"),
            "delta_factorization");
        e.group_order_power_of_3 =
            require_field(ev, "group_order_power_of_3", "certificate.evidence").get<bool>();
        e.delta_power_of_3 =
            require_field(ev, "delta_power_of_3", "certificate.evidence").get<bool>();
        if (e.group_order_power_of_3)
            e.group_order_exponent =
                static_cast<int>(require_int(ev, "group_order_exponent", "certificate.evidence"));
        if (e.delta_power_of_3)
            e.delta_exponent =
                static_cast<int>(require_int(ev, "delta_exponent", "certificate.evidence"));
        c.evidence = std::move(e);
    } else if (kind == "counting_violation") {
        c.kind = ObstructionCertificate::Kind::counting_violation;
        CountingViolationEvidence e{group_from_json(require_field(ev, "group", "certificate")),
                                    {},
                                    ProductSource::TT2,
                                    "",
                                    0,
                                    0};
        e.set = element_array(require_field(ev, "T", "certificate.evidence"), e.group,
                              "certificate.evidence.T");
        const std::string src = require_field(ev, "source", "certificate.evidence").get<std::string>();
        if (src == "TT2")
            e.source = ProductSource::TT2;
        else if (src == "TT4")
            e.source = ProductSource::TT4;
        else if (src == "TT5")
            e.source = ProductSource::TT5;
        else
            throw JsonFormatError("certificate.evidence.source: unknown product source");
        e.identity = require_field(ev, "identity", "certificate.evidence").get<std::string>();
        e.lhs = require_int(ev, "lhs", "certificate.evidence");
        e.rhs = require_int(ev, "rhs", "certificate.evidence");
        c.evidence = std::move(e);
    } else {
        throw JsonFormatError("certificate: unknown kind '" + kind + "'");
    }
    return c;
}

Json resume_token_to_json(const ResumeToken& t) {
    Json j;
    j["n"] = t.n;
    j["group"] = group_to_json(t.group);
    j["canonicalize"] = t.canonicalize;
    Json prefixes = Json::array();
    for (const auto& p : t.prefixes) prefixes.push_back(p);
    j["prefixes"] = prefixes;
    return j;
}

ResumeToken resume_token_from_json(const Json& j) {
    ResumeToken t;
    t.n = require_int(j, "n", "resume token");
    t.group = group_from_json(require_field(j, "group", "resume token"));
    t.canonicalize = require_field(j, "canonicalize", "resume token").get<bool>();
    const Json& prefixes = require_field(j, "prefixes", "resume token");
    if (!prefixes.is_array()) throw JsonFormatError("resume token: prefixes must be an array");
    for (const Json& p : prefixes) {
        const std::vector<std::int64_t> v = int_array(p, "resume token prefix");
        std::vector<int> prefix;
        for (std::int64_t x : v) prefix.push_back(static_cast<int>(x));
        t.prefixes.push_back(std::move(prefix));
    }
    return t;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonFormatError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonFormatError("parse error in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace leekit

#pragma once

#include "toricq/quotient/pipeline.hpp"

#include <iostream>

namespace toricq::cli {

enum ExitCode : int { Ok = 0, Internal = 1, Hypotheses = 2, NotMuP = 3, ParseFailure = 4, VerificationFailed = 5 };

inline int exit_code(ErrorKind k) {
  switch (k) {
  case ErrorKind::Parse: return ParseFailure;
  case ErrorKind::InvalidFan:
  case ErrorKind::NotSmoothCone:
  case ErrorKind::NotComplete:
  case ErrorKind::NotProjective:
  case ErrorKind::TorsionClassGroup:
  case ErrorKind::InvalidClass: return Hypotheses;
  case ErrorKind::NotMuP:
  case ErrorKind::NotPClosed:
  case ErrorKind::NeedsFieldExtension:
  case ErrorKind::NoExactLift:
  case ErrorKind::NotDiagonalizable:
  case ErrorKind::TrivialAction: return NotMuP;
  default: return Internal;
  }
}

struct Streams {
  std::ostream &out = std::cout;
  std::ostream &err = std::cerr;
};

inline int report_error(const Error &e, const std::string &fallback_stage, Streams io) {
  const std::string &stage = e.stage().empty() ? fallback_stage : e.stage();
  io.err << "error [" << stage << "] " << to_string(e.kind()) << ": " << e.what();
  if (e.kind() == ErrorKind::NeedsFieldExtension) io.err << " (try --ext " << e.extension_degree() << ")";
  io.err << "\n";
  return exit_code(e.kind());
}

/// Runs fn, turning library errors into a message naming the stage and an exit code.
template <class Fn> int guarded(const std::string &stage, Streams io, Fn &&fn) {
  try {
    return fn();
  } catch (const Error &e) {
    return report_error(e, stage, io);
  } catch (const std::exception &e) {
    io.err << "error [" << stage << "] internal: " << e.what() << "\n";
    return Internal;
  }
}

inline Fan load_fan_stage(const std::string &path) {
  return detail::at_stage("load_fan", [&] { return load_fan(path); });
}

inline int fan_check(const std::string &path, bool json, Streams io = {}) {
  return guarded("fan_check", io, [&] {
    Fan f = load_fan_stage(path);
    auto diag = validate(f);
    nlohmann::ordered_json j;
    j["valid"] = diag.ok();
    j["violations"] = diag.violations;
    int code = Ok;
    if (!diag.ok()) {
      for (const auto &v : diag.violations) io.out << "invalid: " << v << "\n";
      code = Hypotheses;
    } else {
      bool s = is_smooth(f), c = is_complete(f), pr = is_projective(f);
      j["smooth"] = s;
      j["complete"] = c;
      j["projective"] = pr;
      io.out << (s ? "smooth" : "not-smooth") << " " << (c ? "complete" : "not-complete") << " "
             << (pr ? "projective" : "not-projective") << "\n";
      if (!s || !c) code = Hypotheses;
    }
    if (json) io.out << j.dump(2) << "\n";
    return code;
  });
}

inline int fan_classgroup(const std::string &path, Streams io = {}) {
  return guarded("class_group", io, [&] {
    Fan f = load_fan_stage(path);
    auto diag = validate(f);
    if (!diag.ok()) throw Error(ErrorKind::InvalidFan, diag.violations.front(), "validate");
    auto cg = class_group(f);
    io.out << "rank " << cg.rank << "\n";
    for (std::size_t r = 0; r < cg.num_rays(); ++r)
      io.out << "deg x" << r << " = " << detail::vec_str(cg.degree_of_ray(r)) << "\n";
    return Ok;
  });
}

inline ClassVector parse_class(const std::string &text) {
  ClassVector v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Integer x;
    if (tok.empty() || x.set_str(tok, 10) != 0) throw Error(ErrorKind::InvalidClass, "bad class entry '" + tok + "'");
    v.push_back(x);
  }
  return v;
}

inline int sections(const std::string &path, const std::string &cls, Streams io = {}) {
  return guarded("sections", io, [&] {
    Fan f = load_fan_stage(path);
    auto diag = validate(f);
    if (!diag.ok()) throw Error(ErrorKind::InvalidFan, diag.violations.front(), "validate");
    auto cg = class_group(f);
    auto d = parse_class(cls);
    if (d.size() != cg.rank)
      throw Error(ErrorKind::InvalidClass,
                  "class has " + std::to_string(d.size()) + " entries, class group rank is " + std::to_string(cg.rank));
    for (const auto &m : graded_piece(f, cg, d)) io.out << m.to_string() << "\n";
    return Ok;
  });
}

struct FieldOverrides {
  std::optional<std::int64_t> p;
  std::optional<int> e;
};

inline int vf_check(const std::string &fan_path, const std::string &vf_path, FieldOverrides fo, Streams io = {}) {
  return guarded("vf_check", io, [&] {
    Fan f = load_fan_stage(fan_path);
    auto vf = detail::at_stage("load_vector_field", [&] { return load_vector_field_file(vf_path); });
    auto diag = validate(f);
    if (!diag.ok()) throw Error(ErrorKind::InvalidFan, diag.violations.front(), "validate");
    auto cg = detail::at_stage("class_group", [&] { return class_group(f); });
    auto D = detail::at_stage("vector_field", [&] { return bind_vector_field(vf, f, cg, fo.p, fo.e); });
    io.out << "D = " << D.to_string() << "\n";
    bool zero = equals_mod_euler(cg, D, CoxDerivation::zero(D.field(), cg));
    bool idem = equals_mod_euler(cg, p_power(D), D);
    io.out << "zero mod Euler: " << (zero ? "yes" : "no") << "\n";
    io.out << "delta^p = delta: " << (idem ? "yes" : "no") << "\n";
    if (zero) {
      io.out << "not mu_p (trivial action)\n";
      return int(NotMuP);
    }
    if (!idem) {
      io.out << "not mu_p\n";
      return int(NotMuP);
    }
    io.out << "mu_p\n";
    return int(Ok);
  });
}

struct QuotientConfig {
  FieldOverrides field;
  PipelineOptions pipeline;
  std::optional<std::string> out;
  std::optional<std::string> expect;
};

inline int quotient(const std::string &fan_path, const std::string &vf_path, const QuotientConfig &cfg, Streams io = {}) {
  return guarded("quotient", io, [&] {
    Fan f = load_fan_stage(fan_path);
    auto vf = detail::at_stage("load_vector_field", [&] { return load_vector_field_file(vf_path); });
    auto rep = mu_p_quotient(
        f, [&](const ClassGroup &cg) { return bind_vector_field(vf, f, cg, cfg.field.p, cfg.field.e); }, cfg.pipeline);
    const std::string text = rep.to_json().dump(2) + "\n";
    if (cfg.out) {
      std::ofstream o(*cfg.out, std::ios::binary);
      if (!o) throw Error(ErrorKind::Parse, "cannot write " + *cfg.out, "write_report");
      o << text;
    } else {
      io.out << text;
    }
    auto &h = cfg.out ? io.out : io.err;
    h << "quotient by mu_" << rep.p << ": index " << rep.quotient.index << ", rays";
    for (const auto &u : rep.quotient.fan.rays) h << " " << detail::vec_str(u);
    h << "\n";
    for (const auto &c : rep.verification)
      if (!c.passed) h << "verification failed: " << c.name << " " << c.counterexample.dump() << "\n";
    if (!rep.verified()) {
      io.err << "error [verify]: verification failed\n";
      return int(VerificationFailed);
    }
    if (cfg.expect) {
      auto golden = detail::at_stage("expect", [&] { return detail::read_file(*cfg.expect); });
      if (golden != text) {
        io.err << "error [expect]: report differs from " << *cfg.expect << "\n";
        return int(VerificationFailed);
      }
    }
    return int(Ok);
  });
}

} // namespace toricq::cli

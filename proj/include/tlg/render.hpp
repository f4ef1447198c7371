#pragma once

#include <span>
#include <string>
#include <string_view>

#include "tlg/proof.hpp"

namespace tlg {

// The endsequent, e.g. `c4 ⊢ c4 : N`.
std::string render_text(const Proof& p);

// Standalone LaTeX document with one \infer node per proof node. `words`,
// when given, labels Lex leaves by phrase index.
std::string render_latex(const Proof& p, std::span<const std::string> words = {});

// S-expression proof files:
//   (Rule payload "judgement" premise*)
// payload is a phrase index (Lex), `(xN "type")` (Id, ArrowI), a label
// (BoxE, DiaI) or absent (ArrowE). Judgements use ascii types.
std::string write_proof(const Proof& p);
// Throws SyntaxError/FormatError. The proof is not checked.
Proof read_proof(std::string_view text);

}  // namespace tlg

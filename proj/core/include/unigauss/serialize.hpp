#pragma once

#include <nlohmann/json.hpp>

#include "unigauss/mor.hpp"

namespace unigauss {

using json = nlohmann::json;

// All *_from_json functions throw Error(kParseError) on malformed input.

json field_to_json(const Field& f);
FieldPtr field_from_json(const json& j);

json elem_to_json(const Field& f, Elem x);
Elem elem_from_json(const Field& f, const json& j);

json mat_to_json(const Mat& m, bool with_spec = true);
// Uses f when given, otherwise the "spec" member.
Mat mat_from_json(const json& j, FieldPtr f = nullptr);

json letter_to_json(const Field& f, const Letter& x);
Letter letter_from_json(const Field& f, const json& j);
json word_to_json(const Field& f, const Word& w);
Word word_from_json(const Field& f, const json& j);

json decomposition_to_json(const Field& f, const Decomposition& dec);
Decomposition decomposition_from_json(const Field& f, const json& j);

json generator_set_to_json(const GeneratorSet& gens);
// Rebuilds the canonical set and checks it against the descriptor.
GeneratorSetPtr generator_set_from_json(const FieldPtr& f, const json& j);

json public_key_to_json(const MorPublicKey& pub);
MorPublicKey public_key_from_json(const json& j);
json keypair_to_json(const MorKeyPair& kp);
MorKeyPair keypair_from_json(const json& j);
json ciphertext_to_json(const Ciphertext& ct);
Ciphertext ciphertext_from_json(const json& j);

}  // namespace unigauss

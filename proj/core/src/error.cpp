#include "skincare/error.hpp"

namespace skincare {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedCsv: return "malformed_csv";
    case ErrorCode::EmptyCatalog: return "empty_catalog";
    case ErrorCode::DuplicateId: return "duplicate_id";
    case ErrorCode::UnknownCategory: return "unknown_category";
    case ErrorCode::InvalidValue: return "invalid_value";
    case ErrorCode::EmptyVocabulary: return "empty_vocabulary";
    case ErrorCode::UnknownToken: return "unknown_token";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::RowOutOfRange: return "row_out_of_range";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::NonFiniteGradient: return "non_finite_gradient";
    case ErrorCode::NonFiniteLoss: return "non_finite_loss";
    case ErrorCode::TooFewPoints: return "too_few_points";
    case ErrorCode::InvalidPerplexity: return "invalid_perplexity";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::InvalidDistribution: return "invalid_distribution";
    case ErrorCode::UnknownAnchor: return "unknown_anchor";
    case ErrorCode::UnknownBrand: return "unknown_brand";
    case ErrorCode::UnknownProduct: return "unknown_product";
    case ErrorCode::StaleModel: return "stale_model";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::EmptyInput: return "empty_input";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Format: return "format_error";
  }
  return "unknown";
}

}  // namespace skincare

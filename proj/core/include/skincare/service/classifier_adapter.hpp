#pragma once

#include <optional>
#include <string>

#include "skincare/assessment.hpp"

namespace skincare::service {

/// External image classifier honouring the SkinAssessment JSON contract.
class ClassifierAdapter {
 public:
  virtual ~ClassifierAdapter() = default;
  /// `skin_type` fills in the skin type when the classifier reports only
  /// concern confidences. Throws Error on failure.
  virtual SkinAssessment classify(const std::string& image_bytes,
                                  std::optional<SkinType> skin_type) const = 0;
  virtual std::string describe() const = 0;
};

/// Runs `<command> <image-path>` through the shell and parses its stdout as
/// an assessment payload (see assessment_from_json). The result's source is
/// always Classifier.
class SubprocessClassifier final : public ClassifierAdapter {
 public:
  explicit SubprocessClassifier(std::string command);
  SkinAssessment classify(const std::string& image_bytes,
                          std::optional<SkinType> skin_type) const override;
  std::string describe() const override { return "subprocess: " + command_; }

 private:
  std::string command_;
};

}  // namespace skincare::service

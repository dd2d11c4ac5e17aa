#ifndef TOPICNET_STEMMER_HPP
#define TOPICNET_STEMMER_HPP

#include <string>
#include <string_view>

namespace topicnet {

/// Snowball English ("Porter2") stemmer.
///
/// Input must be a lowercase ASCII-alphabetic token; words of one or two
/// letters are returned unchanged. The output matches the reference Snowball
/// implementation exactly, e.g. "simulation" -> "simul", "agent" -> "agent".
std::string stem(std::string_view token);

}  // namespace topicnet

#endif  // TOPICNET_STEMMER_HPP

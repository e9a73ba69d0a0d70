#pragma once

#include <stdexcept>
#include <string>

namespace rosetree {

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// lex order is undefined between a node and one of its extensions
struct comparable_nodes_error : domain_error {
    explicit comparable_nodes_error(const std::string& what) : domain_error(what) {}
};

struct out_of_range_error : domain_error {
    explicit out_of_range_error(const std::string& what) : domain_error(what) {}
};

struct invalid_generator_error : domain_error {
    explicit invalid_generator_error(const std::string& what) : domain_error(what) {}
};

struct not_in_subtree_error : domain_error {
    explicit not_in_subtree_error(const std::string& what) : domain_error(what) {}
};

struct not_skew_error : domain_error {
    explicit not_skew_error(const std::string& what) : domain_error(what) {}
};

struct depth_mismatch_error : domain_error {
    explicit depth_mismatch_error(const std::string& what) : domain_error(what) {}
};

struct not_antichain_error : domain_error {
    explicit not_antichain_error(const std::string& what) : domain_error(what) {}
};

struct too_short_error : domain_error {
    explicit too_short_error(const std::string& what) : domain_error(what) {}
};

struct not_monotone_error : domain_error {
    explicit not_monotone_error(const std::string& what) : domain_error(what) {}
};

struct side_unavailable_error : domain_error {
    explicit side_unavailable_error(const std::string& what) : domain_error(what) {}
};

struct pool_too_small_error : domain_error {
    explicit pool_too_small_error(const std::string& what) : domain_error(what) {}
};

struct oracle_unknown_error : domain_error {
    explicit oracle_unknown_error(const std::string& what) : domain_error(what) {}
};

struct not_cauchy_error : domain_error {
    explicit not_cauchy_error(const std::string& what) : domain_error(what) {}
};

struct too_few_blocks_error : domain_error {
    explicit too_few_blocks_error(const std::string& what) : domain_error(what) {}
};

struct empty_enumeration_error : domain_error {
    explicit empty_enumeration_error(const std::string& what) : domain_error(what) {}
};

} // namespace rosetree

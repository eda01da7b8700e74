#include "l1sp/error.hpp"

namespace l1sp {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::DisjointnessViolation: return "DISJOINTNESS_VIOLATION";
        case ErrorCode::GeneralPositionViolation: return "GENERAL_POSITION_VIOLATION";
        case ErrorCode::NonRectilinearEdge: return "NON_RECTILINEAR_EDGE";
        case ErrorCode::NegativeWeight: return "NEGATIVE_WEIGHT";
        case ErrorCode::MalformedPolygon: return "MALFORMED_POLYGON";
        case ErrorCode::CoordinateRange: return "COORDINATE_RANGE";
        case ErrorCode::OutOfBbox: return "OUT_OF_BBOX";
        case ErrorCode::PointInsideObstacle: return "POINT_INSIDE_OBSTACLE";
        case ErrorCode::WrongMode: return "WRONG_MODE";
        case ErrorCode::InfeasibleParameters: return "INFEASIBLE_PARAMETERS";
        case ErrorCode::EmptyPointSet: return "EMPTY_POINT_SET";
        case ErrorCode::IndexTooLarge: return "INDEX_TOO_LARGE";
        case ErrorCode::ArithmeticOverflow: return "ARITHMETIC_OVERFLOW";
        case ErrorCode::FormatMismatch: return "FORMAT_MISMATCH";
    }
    return "UNKNOWN";
}

}  // namespace l1sp

#include "commutantkit/capi.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "commutantkit/commands.hpp"

struct ck_context {
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

ck_context* ck_context_new(void) { return new (std::nothrow) ck_context; }

void ck_context_free(ck_context* ctx) { delete ctx; }

int ck_run(ck_context* ctx, const char* request_json, char** response_json) {
    if (!ctx || !request_json || !response_json) return CK_INVALID_INPUT;
    try {
        ck::json request = ck::json::parse(request_json);
        ck::CommandOutcome outcome = ck::run_command(request);
        char* payload = dup_string(outcome.report.dump(2));
        if (!payload) {
            ctx->last_error = "out of memory";
            return CK_INTERNAL_ERROR;
        }
        *response_json = payload;
        ctx->last_error.clear();
        return outcome.code == 0 ? CK_OK : CK_VERDICT_FAILED;
    } catch (const ck::json::exception& e) {
        ctx->last_error = std::string("json: ") + e.what();
        return CK_INVALID_INPUT;
    } catch (const std::invalid_argument& e) {
        ctx->last_error = e.what();
        return CK_INVALID_INPUT;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return CK_INTERNAL_ERROR;
    }
}

const char* ck_last_error(const ck_context* ctx) {
    return ctx ? ctx->last_error.c_str() : "null context";
}

void ck_string_free(char* s) { std::free(s); }

const char* ck_version(void) { return "commutantkit 1.0.0"; }

}  // extern "C"

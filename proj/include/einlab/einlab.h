#ifndef EINLAB_EINLAB_H
#define EINLAB_EINLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(EINLAB_BUILDING_LIBRARY)
#define EINLAB_API __attribute__((visibility("default")))
#else
#define EINLAB_API
#endif

typedef enum einlab_status {
    EINLAB_OK = 0,
    EINLAB_E_DOMAIN = 1,
    EINLAB_E_INCONSISTENT = 2,
    EINLAB_E_DEGENERATE_FIBER = 3,
    EINLAB_E_PRECONDITION = 4,
    EINLAB_E_SOLVER = 5,
    EINLAB_E_NOT_CCE = 6,
    EINLAB_E_UNSUPPORTED = 7,
    EINLAB_E_OUT_OF_MODEL = 8,
    EINLAB_E_SCHEMA = 9,
    EINLAB_E_IO = 10,
    EINLAB_E_INVALID_ARGUMENT = 11,
    EINLAB_E_INTERNAL = 12
} einlab_status;

typedef struct einlab_family einlab_family;
typedef struct einlab_config einlab_config;

/* Message for the most recent failure on the calling thread ("" if none). */
EINLAB_API const char* einlab_last_error(void);
EINLAB_API const char* einlab_status_name(einlab_status status);
EINLAB_API const char* einlab_version(void);

/* Frees strings returned through char** out-parameters. */
EINLAB_API void einlab_string_free(char* s);

/* Configuration. A NULL config anywhere below means built-in defaults. */
EINLAB_API einlab_status einlab_config_default(einlab_config** out);
EINLAB_API einlab_status einlab_config_load(const char* path, einlab_config** out);
EINLAB_API einlab_status einlab_config_set(einlab_config* cfg, const char* key, const char* value);
/* Current value of one key as text; free with einlab_string_free. */
EINLAB_API einlab_status einlab_config_get(const einlab_config* cfg, const char* key, char** value);
EINLAB_API einlab_status einlab_config_dump(const einlab_config* cfg, char** text);
EINLAB_API void einlab_config_free(einlab_config* cfg);

typedef struct einlab_negative_spec {
    int n;
    int p;
    int64_t q1;
    int64_t q2;
    double s1;
    double lambda;   /* (0, 1]; 1 gives the psi = 0 family */
    double eps;      /* <= 0; 0 gives a Ricci-flat family */
    int psi_sign;    /* +1 or -1 */
    double vol_base; /* <= 0 means the config default */
} einlab_negative_spec;

typedef struct einlab_positive_spec {
    int n;
    int p;
    int64_t q1;
    int64_t q2;
    double vol_base; /* <= 0 means the config default */
} einlab_positive_spec;

EINLAB_API einlab_status einlab_build_negative(const einlab_negative_spec* spec, const einlab_config* cfg,
                                               einlab_family** out);
EINLAB_API einlab_status einlab_build_positive(const einlab_positive_spec* spec, const einlab_config* cfg,
                                               einlab_family** out);
EINLAB_API void einlab_family_free(einlab_family* family);

EINLAB_API einlab_status einlab_family_export(const einlab_family* family, char** json);
EINLAB_API einlab_status einlab_family_import(const char* json, einlab_family** out);
EINLAB_API einlab_status einlab_family_save(const einlab_family* family, const char* path);
EINLAB_API einlab_status einlab_family_load(const char* path, einlab_family** out);

/* s2 is set to 0 and *compact to 0 for complete families. */
EINLAB_API einlab_status einlab_family_domain(const einlab_family* family, double* s1, double* s2, int* compact);

/* Index 0 = value, 1 = first, 2 = second derivative in s. */
typedef struct einlab_profile_point {
    double s;
    double alpha[3];
    double beta[3];
    double delta[3];
    double u1[3];
    double u2[3];
    double b11[3];
    double b12[3];
    double b22[3];
    int b_defined;
} einlab_profile_point;

EINLAB_API einlab_status einlab_family_eval(const einlab_family* family, double s, einlab_profile_point* out);

/* Reports are JSON documents; *all_pass receives 1 when every check passed. */
EINLAB_API einlab_status einlab_verify(const einlab_family* family, const einlab_config* cfg, char** report,
                                       int* all_pass);

enum {
    EINLAB_DIAG_Q_CURVATURE = 1,
    EINLAB_DIAG_VOLUME = 2,
    EINLAB_DIAG_DECAY = 4
};

/* flags == 0 runs every diagnostic that applies to the family. */
EINLAB_API einlab_status einlab_diagnose(const einlab_family* family, const einlab_config* cfg, unsigned flags,
                                         char** report, int* all_pass);

/* CSV with columns s,t,alpha,beta,Delta,U1,U2,b11,b12,b22. npoints == 0 uses
   the config default; s_max <= 0 uses 1e3 * s1 for complete families. */
EINLAB_API einlab_status einlab_dump_profile(const einlab_family* family, const einlab_config* cfg, size_t npoints,
                                             double s_max, char** csv);

typedef enum einlab_classify_mode { EINLAB_MODE_INVARIANTS = 0, EINLAB_MODE_CONGRUENCES = 1 } einlab_classify_mode;

/* Charges are decimal integer strings of any length. A zero product q1*q2
   yields EINLAB_E_OUT_OF_MODEL with the verdict still written. */
EINLAB_API einlab_status einlab_classify(const char* q1, const char* q2, const char* qhat1, const char* qhat2,
                                         einlab_classify_mode mode, char** verdict, int* homeomorphic,
                                         int* diffeomorphic);

typedef enum einlab_pair_kind { EINLAB_PAIRS_SPIN = 0, EINLAB_PAIRS_NONSPIN = 1 } einlab_pair_kind;

EINLAB_API einlab_status einlab_enumerate_pairs(einlab_pair_kind kind, long long s_min, long long s_max, char** report,
                                                int* all_match);

#ifdef __cplusplus
}
#endif

#endif

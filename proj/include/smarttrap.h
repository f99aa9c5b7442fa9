/* smarttrap.h - C API of the smart-trap library.
 *
 * The library bundles a binary-vision insect detector, the trap state
 * machine with its actuation schedule, simulated field hardware, a capture
 * telemetry client/service pair, and a capture-density heatmap generator.
 *
 * Conventions:
 *   - every fallible call returns st_status; ST_OK is 0
 *   - on failure, st_last_error() returns a thread-local description
 *   - objects returned through st_* out-parameters are owned by the caller
 *     and released with the matching *_free function
 *   - strings returned through char** out-parameters are released with
 *     st_string_free
 */

#ifndef SMARTTRAP_H
#define SMARTTRAP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
    ST_OK = 0,
    ST_ERR_INVALID_ARGUMENT = 1, /* null handle, malformed parameter */
    ST_ERR_VALIDATION = 2,       /* input violates a domain rule */
    ST_ERR_PARSE = 3,            /* malformed file or payload */
    ST_ERR_IO = 4,               /* filesystem failure */
    ST_ERR_TRANSPORT = 5,        /* network delivery failure */
    ST_ERR_STATE = 6,            /* call not valid in the current state */
    ST_ERR_INTERNAL = 7
} st_status;

const char* st_status_name(st_status status);

/* Message for the most recent failure on this thread; never NULL. */
const char* st_last_error(void);

void st_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Images (binary PPM, P6)                                            */
/* ------------------------------------------------------------------ */

typedef struct st_image st_image;

st_status st_image_read_ppm(const char* path, st_image** out);
st_status st_image_write_ppm(const st_image* img, const char* path);
int st_image_width(const st_image* img);
int st_image_height(const st_image* img);
void st_image_free(st_image* img);

/* ------------------------------------------------------------------ */
/* Detection                                                          */
/* ------------------------------------------------------------------ */

typedef struct st_detect_params {
    int threshold; /* gray level; lighter pixels are background */
    int se_size;   /* odd kernel side for denoising */
    int min_px;    /* inclusive box side range for the target insect */
    int max_px;
} st_detect_params;

/* threshold 45, kernel 3, range [10, 60] */
void st_detect_params_defaults(st_detect_params* params);

typedef struct st_detection st_detection;

st_status st_detect_frame(const st_image* frame, const st_detect_params* params,
                          st_detection** out);
int st_detection_cbb_count(const st_detection* det);
int st_detection_unknown_count(const st_detection* det);
int st_detection_total(const st_detection* det);
/* is_cbb receives 1 for the target class, 0 otherwise. */
st_status st_detection_box(const st_detection* det, int index, int* x, int* y, int* w, int* h,
                           int* is_cbb);
/* Green outline per target box, red per unknown box. */
st_status st_annotate_frame(const st_image* frame, const st_detection* det, st_image** out);
void st_detection_free(st_detection* det);

/* ------------------------------------------------------------------ */
/* Synthetic scenes (ground-truthed test frames)                      */
/* ------------------------------------------------------------------ */

typedef struct st_scene st_scene;

st_status st_scene_from_file(const char* path, st_scene** out);
st_status st_scene_from_text(const char* text, st_scene** out);
/* Bundled demonstration scene: 11 in-range and 3 out-of-range bodies. */
const char* st_scene_demo_text(void);

/* Borrowed reference, valid while the scene lives. */
const st_image* st_scene_image(const st_scene* scene);
int st_scene_truth_cbb(const st_scene* scene);
int st_scene_truth_unknown(const st_scene* scene);
void st_scene_free(st_scene* scene);

/* ------------------------------------------------------------------ */
/* Trap runs over recorded frames                                     */
/* ------------------------------------------------------------------ */

typedef struct st_trap_run st_trap_run;

typedef struct st_trap_run_params {
    const char* frames_dir;  /* required; *.ppm files processed in name order */
    const char* endpoint;    /* optional http://host:port target */
    const char* config_path; /* optional smarttrap-config file */
} st_trap_run_params;

st_status st_trap_run_execute(const st_trap_run_params* params, st_trap_run** out);
/* Newline-delimited JSON: frame, state, actuator, message, camera_error. */
st_status st_trap_run_log_ndjson(const st_trap_run* run, char** out);
int st_trap_run_message_total(const st_trap_run* run);
uint64_t st_trap_run_delivered(const st_trap_run* run);
uint64_t st_trap_run_dropped(const st_trap_run* run);
size_t st_trap_run_pending(const st_trap_run* run);
void st_trap_run_free(st_trap_run* run);

/* ------------------------------------------------------------------ */
/* Field-round simulation                                             */
/* ------------------------------------------------------------------ */

typedef struct st_round st_round;

st_status st_round_simulate(const char* scenario_path, const char* endpoint, st_round** out);
st_status st_round_simulate_text(const char* scenario_text, const char* endpoint,
                                 st_round** out);
const char* st_round_demo_scenario_text(void);

int st_round_message_total(const st_round* round);
int st_round_captured(const st_round* round);
int st_round_insect_total(const st_round* round);
uint64_t st_round_delivered(const st_round* round);
size_t st_round_pending(const st_round* round);
/* One capture message per line, wire format. */
st_status st_round_messages_ndjson(const st_round* round, char** out);
void st_round_free(st_round* round);

/* ------------------------------------------------------------------ */
/* Ingest service                                                     */
/* ------------------------------------------------------------------ */

typedef struct st_service st_service;

/* listen_addr is "host:port" or "port"; port 0 picks a free port.
 * fsync_on_append != 0 makes every accepted record durable before the
 * acknowledgment goes out. */
st_status st_service_start(const char* listen_addr, const char* data_dir, int fsync_on_append,
                           st_service** out);
int st_service_port(const st_service* service);
size_t st_service_store_size(const st_service* service);
st_status st_service_stop(st_service* service);
void st_service_free(st_service* service);

/* ------------------------------------------------------------------ */
/* Heatmaps                                                           */
/* ------------------------------------------------------------------ */

typedef struct st_heatmap st_heatmap;

typedef struct st_heatmap_params {
    const char* zoom; /* "z13".."z16" */
    double blur_m;    /* Gaussian spread; 0 concentrates each capture in a cell */
    double opacity;   /* [0,1] */
    int has_bounds;   /* when 0 the bounds come from the data */
    double min_lon, min_lat, max_lon, max_lat;
} st_heatmap_params;

/* zoom z15, blur 10 m, opacity 0.6, computed bounds */
void st_heatmap_params_defaults(st_heatmap_params* params);

/* source is an http(s) endpoint (queried over the capture API) or a local
 * newline-delimited record log. */
st_status st_heatmap_build(const char* source, const st_heatmap_params* params,
                           st_heatmap** out);
st_status st_heatmap_write_png(const st_heatmap* map, const char* path);
st_status st_heatmap_write_geojson(const st_heatmap* map, const char* path);
st_status st_heatmap_write_html(const st_heatmap* map, const char* path);
size_t st_heatmap_nonzero_cells(const st_heatmap* map);
double st_heatmap_total_raw(const st_heatmap* map);
double st_heatmap_kernel_mass(const st_heatmap* map);
void st_heatmap_free(st_heatmap* map);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SMARTTRAP_H */

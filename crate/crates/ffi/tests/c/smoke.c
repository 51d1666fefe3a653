#include <math.h>
#include <stdio.h>
#include "qspectra.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      char msg[256];                                                  \
      qs_last_error_message(msg, sizeof msg);                         \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, msg);    \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  QsSpec *spec = NULL;
  double nu = 2.5;
  CHECK(qs_spec_new("V1", &nu, 1, 1.0, 1.0, 0.5, &spec) == QS_STATUS_OK);

  QsSpectrum *sp = NULL;
  CHECK(qs_spectrum_new(spec, &sp) == QS_STATUS_OK);
  double e[8];
  size_t len = 0;
  CHECK(qs_spectrum_energies(sp, e, 8, &len) == QS_STATUS_OK);
  CHECK(len == 2 && fabs(e[0] + 4.0) < 1e-12 && fabs(e[1] + 1.0) < 1e-12);
  CHECK(qs_spectrum_energies(sp, e, 1, &len) == QS_STATUS_BUFFER_TOO_SMALL && len == 2);

  double re, im;
  CHECK(qs_green(spec, 0.0, 0.0, -4.0, 0.0, &re, &im) == QS_STATUS_POLE);

  QsSpec *bad = NULL;
  CHECK(qs_spec_from_json("{\"kind\": \"V9\"}", &bad) == QS_STATUS_INVALID && bad == NULL);

  qs_spectrum_free(sp);
  qs_spec_free(spec);
  printf("ok\n");
  return 0;
}

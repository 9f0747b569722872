#include <gconv/gconv.h>
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void groups(void) {
  gconv_group* g = NULL;
  size_t n = 0, ab = 0, inv = 0, id = 0;
  char* label = NULL;
  EXPECT(gconv_group_create("S3", &g) == GCONV_OK);
  EXPECT(gconv_group_order(g, &n) == GCONV_OK && n == 6);
  EXPECT(gconv_group_parse(g, "(12)", &id) == GCONV_OK);
  EXPECT(gconv_group_multiply(g, id, id, &ab) == GCONV_OK && ab == 0);
  EXPECT(gconv_group_inverse(g, id, &inv) == GCONV_OK && inv == id);
  EXPECT(gconv_group_label(g, 0, &label) == GCONV_OK && strcmp(label, "e") == 0);
  gconv_string_free(label);
  EXPECT(gconv_group_multiply(g, 6, 0, &ab) == GCONV_E_ARGUMENT);
  EXPECT(gconv_group_parse(g, "(45)", &id) == GCONV_E_PARSE);
  EXPECT(strlen(gconv_last_error()) > 0);
  gconv_group_free(g);

  g = NULL;
  EXPECT(gconv_group_create("Q8", &g) == GCONV_E_PARSE && g == NULL);
  EXPECT(gconv_group_create("S7", &g) == GCONV_E_RESOURCE);
  EXPECT(gconv_group_create(NULL, &g) == GCONV_E_ARGUMENT);
}

static void spaces_and_functions(void) {
  gconv_group* g = NULL;
  gconv_space* left = NULL;
  gconv_space* dbl = NULL;
  gconv_function *f = NULL, *chi = NULL, *a = NULL, *b = NULL, *back = NULL;
  size_t size = 0, x = 0, rows = 0, cols = 0, i;
  double fv[6], cv[4], av[6], bv[6];
  char* text = NULL;

  gconv_group_create("S3", &g);
  EXPECT(gconv_space_create(g, "{\"kind\": \"LEFT\", \"H\": [\"(12)\"]}", &left) == GCONV_OK);
  EXPECT(gconv_space_size(left, &size) == GCONV_OK && size == 3);
  EXPECT(gconv_space_act(left, 0, 2, &x) == GCONV_OK && x == 2);
  EXPECT(gconv_space_create(g, "{\"kind\": \"DOUBLE\", \"H\": [\"(12)\"], \"K\": [\"(12)\"]}", &dbl) == GCONV_OK);
  EXPECT(gconv_space_act(dbl, 1, 0, &x) == GCONV_E_MISMATCH);
  EXPECT(gconv_space_create(g, "{\"kind\": ", &dbl) == GCONV_E_PARSE);

  for (i = 0; i < 6; ++i) fv[i] = 0.5 * (double)i - 1.0;
  for (i = 0; i < 4; ++i) cv[i] = 1.0 / (double)(i + 1);
  EXPECT(gconv_function_create(left, 1, 1, fv, &f) == GCONV_OK);
  EXPECT(gconv_function_create(dbl, 1, 1, cv, &chi) == GCONV_OK);
  EXPECT(gconv_convolve(f, chi, 3, 0, &a) == GCONV_OK);
  EXPECT(gconv_convolve(f, chi, 3, 1, &b) == GCONV_OK);
  EXPECT(gconv_function_shape(a, &size, &rows, &cols) == GCONV_OK && size == 3 && rows == 1 && cols == 1);
  gconv_function_values(a, av);
  gconv_function_values(b, bv);
  for (i = 0; i < 6; ++i) EXPECT(fabs(av[i] - bv[i]) < 1e-10);
  EXPECT(gconv_convolve(f, chi, 7, 0, &a) == GCONV_E_ARGUMENT);
  EXPECT(gconv_convolve(chi, f, 3, 0, &a) == GCONV_E_MISMATCH);

  EXPECT(gconv_function_to_json(a, &text) == GCONV_OK);
  EXPECT(gconv_function_from_json(text, &back) == GCONV_OK);
  gconv_function_values(back, bv);
  for (i = 0; i < 6; ++i) EXPECT(av[i] == bv[i]);
  gconv_string_free(text);

  gconv_function_free(back);
  gconv_function_free(a);
  gconv_function_free(b);
  gconv_function_free(f);
  gconv_function_free(chi);
  gconv_space_free(left);
  gconv_space_free(dbl);
  gconv_group_free(g);
}

static void commands(void) {
  char* report = NULL;
  char* table = NULL;
  int pass = -1;
  EXPECT(gconv_run("group", "{\"group\": \"Z4\"}", &report, &pass) == GCONV_OK && pass == 1);
  EXPECT(strstr(report, "\"order\": 4") != NULL);
  EXPECT(gconv_report_table(report, &table) == GCONV_OK && strstr(table, "PASS") != NULL);
  gconv_string_free(table);
  gconv_string_free(report);

  EXPECT(gconv_run("solve-basis", "{\"group\": \"S3\", \"h\": \"(12)\", \"k\": \"(12)\"}", &report, &pass) == GCONV_OK);
  EXPECT(pass == 1 && strstr(report, "\"dimension\": 2") != NULL);
  gconv_string_free(report);

  EXPECT(gconv_run("teleport", "{}", &report, &pass) == GCONV_E_PARSE);
  EXPECT(gconv_run("group", "not json", &report, &pass) == GCONV_E_PARSE);
  EXPECT(gconv_run("demo", "{\"n\": 9}", &report, &pass) == GCONV_E_MISMATCH);
}

int main(void) {
  groups();
  spaces_and_functions();
  commands();
  if (failures) fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}

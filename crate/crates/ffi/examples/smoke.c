#include <stdio.h>
#include "balgraph.h"

int main(void) {
    BgGraph *graph = NULL;
    BgGroup *group = NULL;
    BgLabeling *labels = NULL;
    char *witness = NULL;
    int balanced = -1;
    uint64_t size = 0;
    size_t p = 0, q = 0;

    if (bg_graph_parse("e a x y\ne b y z\ne c z x\n", &graph) != BG_STATUS_OK ||
        bg_group_parse("Z/4", &group) != BG_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", bg_last_error());
        return 1;
    }
    bg_structure(graph, BG_FAMILY_WF, &p, &q);
    bg_structure_cardinality(graph, group, BG_FAMILY_WF, &size);
    printf("WF p=%zu q=%zu size=%llu\n", p, q, (unsigned long long)size);

    bg_labeling_parse(graph, group, "a 1\nb 1\nc 1\n", &labels);
    bg_check(graph, labels, BG_FAMILY_HR, &balanced, &witness);
    printf("HR balanced=%d witness=%s\n", balanced, witness ? witness : "-");

    bg_string_free(witness);
    bg_labeling_free(labels);
    bg_group_free(group);
    bg_graph_free(graph);
    return 0;
}

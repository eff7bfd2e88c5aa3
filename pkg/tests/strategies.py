from hypothesis import strategies as st

from slt.randgen import GenConfig, random_global, random_program

small = GenConfig(max_depth=5)


def global_types(cfg=None):
    return st.builds(random_global, st.randoms(use_true_random=False), st.just(cfg or GenConfig()))


def programs(cfg=None, max_decls=3):
    return st.builds(
        random_program, st.randoms(use_true_random=False), st.just(cfg or small), st.just(max_decls)
    )

from hypothesis import strategies as st

from digifix.image import DigitalImage
from digifix.selfmap import SelfMap


@st.composite
def images(draw, max_points=12, max_dim=3, span=4, min_points=1):
    n = draw(st.integers(1, max_dim))
    coords = st.tuples(*[st.integers(-span, span)] * n)
    pts = draw(st.lists(coords, min_size=min_points, max_size=max_points, unique=True))
    u = draw(st.integers(1, n))
    return DigitalImage(tuple(pts), u)


@st.composite
def image_and_map(draw, max_points=6, **kw):
    img = draw(images(max_points=max_points, **kw))
    table = draw(st.lists(st.integers(0, len(img) - 1), min_size=len(img), max_size=len(img)))
    return img, SelfMap(tuple(table))

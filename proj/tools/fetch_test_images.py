#!/usr/bin/env python3
"""Fetch 512x512 grayscale test images into data/images as binary PGM.

Sources are package-registry archives, so this works behind a registry-only
proxy:

  lena.pgm      scipy 0.16.1 sdist, scipy/misc/lena.dat (pickled 512x512 array)
  mandrill.pgm  npm baboon-image 2.1.0, baboon.png converted to luma (PIL "L")

Other standard images (boat, bridge, peppers) can be dropped into the same
directory as 8-bit P5 PGMs; the acceptance suite picks up whatever is there.
"""

import argparse
import io
import pathlib
import pickle
import re
import tarfile
import urllib.request

import numpy as np
from PIL import Image

SCIPY_SDIST = "scipy-0.16.1.tar.gz"
LENA_MEMBER = "scipy-0.16.1/scipy/misc/lena.dat"
BABOON_TARBALL = "https://registry.npmjs.org/baboon-image/-/baboon-image-2.1.0.tgz"
BABOON_MEMBER = "package/baboon.png"


def fetch(url):
    with urllib.request.urlopen(url, timeout=300) as resp:
        return resp.read()


def scipy_sdist_url():
    index = fetch("https://pypi.org/simple/scipy/").decode()
    m = re.search(r'href="([^"]*' + re.escape(SCIPY_SDIST) + r')[#"]', index)
    if not m:
        raise SystemExit("scipy 0.16.1 sdist not listed on the package index")
    return urllib.request.urljoin("https://pypi.org/simple/scipy/", m.group(1))


def lena():
    data = fetch(scipy_sdist_url())
    with tarfile.open(fileobj=io.BytesIO(data), mode="r:gz") as tar:
        raw = tar.extractfile(LENA_MEMBER).read()
    arr = np.asarray(pickle.loads(raw, encoding="latin1"))
    return Image.fromarray(arr.astype(np.uint8), mode="L")


def mandrill():
    data = fetch(BABOON_TARBALL)
    with tarfile.open(fileobj=io.BytesIO(data), mode="r:gz") as tar:
        png = tar.extractfile(BABOON_MEMBER).read()
    return Image.open(io.BytesIO(png)).convert("L")


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dir", type=pathlib.Path, default=root / "data" / "images")
    parser.add_argument("--force", action="store_true")
    args = parser.parse_args()
    args.dir.mkdir(parents=True, exist_ok=True)

    for name, make in (("lena", lena), ("mandrill", mandrill)):
        path = args.dir / f"{name}.pgm"
        if path.exists() and not args.force:
            print(f"{path} exists")
            continue
        img = make()
        if img.size != (512, 512):
            raise SystemExit(f"{name}: unexpected size {img.size}")
        img.save(path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

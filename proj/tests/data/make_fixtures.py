"""Regenerates the natural-image fixtures from scikit-image sample data."""
import os

import numpy as np
from PIL import Image
from skimage import data

HERE = os.path.dirname(os.path.abspath(__file__))


def save(arr, name):
    Image.fromarray(arr).save(os.path.join(HERE, name))


def main():
    camera = Image.fromarray(data.camera())
    save(np.asarray(camera.resize((256, 256), Image.BICUBIC)), "camera_256.png")
    save(np.asarray(camera.crop((0, 64, 512, 448))), "camera_512x384.png")
    save(data.coins()[:128, :160], "coins_128x160.png")
    save(data.moon()[100:196, 200:296], "moon_96.png")
    save(data.brick()[:64, :80], "brick_64x80.png")
    save(data.grass()[:72, :72], "grass_72.png")
    astro = Image.fromarray(data.astronaut()).resize((128, 128), Image.BICUBIC)
    save(np.asarray(astro), "astronaut_rgb_128.png")
    chelsea = np.asarray(data.chelsea())[:96, 100:228]
    Image.fromarray(chelsea).save(os.path.join(HERE, "chelsea_rgb_96x128.bmp"))
    Image.fromarray(data.camera()[200:264, 200:264]).save(
        os.path.join(HERE, "camera_gray_64.bmp"))


if __name__ == "__main__":
    main()
